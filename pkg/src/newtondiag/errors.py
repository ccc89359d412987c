"""Exception types shared across modules (mapped to CLI exit codes)."""


class PreconditionError(ValueError):
    """An operation was called outside its stated domain (exit code 2)."""


class CapExceeded(RuntimeError):
    """A search would exceed its configured size cap (exit code 3)."""

    def __init__(self, message: str, estimate=None):
        self.estimate = estimate
        if estimate is not None:
            message = f"{message} (estimate: {estimate})"
        super().__init__(message)


class InternalContradiction(AssertionError):
    """A proved inequality failed at runtime (exit code 1); indicates a bug."""
