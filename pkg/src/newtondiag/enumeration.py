"""Brute-force harnesses: support enumeration, node minima and the decomposability oracle."""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb
from typing import Iterator, Sequence

from .diagram import (
    graded_key,
    has_overhang,
    is_connected,
    min_over_signs,
    normalize_support,
    simplex_points,
    support_size,
)
from .errors import CapExceeded, InternalContradiction, PreconditionError
from .polynomial import Polynomial, divide_by_s, strip_common_monomial

log = logging.getLogger(__name__)

CONSTRAINTS = {"connected", "contains-origin", "no-overhang", "maximal", "exact-size"}


@dataclass(frozen=True)
class SearchSpec:
    """What to enumerate.

    ``exact-size`` keeps supports whose hull size equals ``d``; ``maximal`` keeps
    only the full simplex.  ``sign_mode="realizable-only"`` behaves like ``"all"``
    because every sign map is realized by a unit-coefficient quotient.
    """

    n: int
    d: int
    constraints: frozenset = frozenset()
    sign_mode: str = "all"
    max_subsets: int = 1 << 21
    max_points: int = 24

    def __post_init__(self):
        object.__setattr__(self, "constraints", frozenset(self.constraints))
        unknown = self.constraints - CONSTRAINTS
        if unknown:
            raise PreconditionError(f"unknown constraints {sorted(unknown)}")
        if self.sign_mode not in ("all", "realizable-only"):
            raise PreconditionError(f"unknown sign mode {self.sign_mode!r}")
        if self.n < 1 or self.d < 1:
            raise PreconditionError("need n >= 1 and d >= 1")

    @property
    def cost_estimate(self) -> int:
        if "maximal" in self.constraints:
            return 1
        return 2 ** len(simplex_points(self.n, self.d))


def _keep(K: frozenset, spec: SearchSpec) -> bool:
    c = spec.constraints
    if "contains-origin" in c and (0,) * spec.n not in K:
        return False
    if "exact-size" in c and support_size(K) != spec.d:
        return False
    # overhang test is cheaper than connectivity, so it runs first
    if "no-overhang" in c and has_overhang(K)[0]:
        return False
    if "connected" in c and not is_connected(K):
        return False
    return True


def _canonical_key(K):
    pts = sorted(K, key=graded_key)
    return (len(pts), [graded_key(m) for m in pts])


def enumerate_supports(spec: SearchSpec) -> Iterator[frozenset]:
    """Every normalized support in the simplex meeting the constraints, once each, in canonical order."""
    pts = simplex_points(spec.n, spec.d)
    if "maximal" in spec.constraints:
        K = frozenset(pts)
        if _keep(K, spec):
            yield K
        return
    est = spec.cost_estimate
    if est > spec.max_subsets:
        raise CapExceeded(f"support enumeration over {len(pts)} points exceeds the cap", est)
    seen = set()
    for mask in range(1, 1 << len(pts)):
        K = normalize_support(pts[i] for i in range(len(pts)) if mask >> i & 1)
        if K in seen:
            continue
        seen.add(K)
    found = [K for K in seen if _keep(K, spec)]
    found.sort(key=_canonical_key)
    yield from found


def min_nodes_over_signs(K, d: int, cap: int = 24):
    """Exact minimum of ``#(D)`` over all sign maps on ``K`` (global flip factored out)."""
    return min_over_signs(K, d, metric="nodes", cap=cap)


# -- exhaustive verification -------------------------------------------------------------------

THEOREMS = {
    # tag: (n, constraints, bound as a function of d, d_max default, d_max limit)
    "T3.4": (2, {"connected", "exact-size"}, lambda d: ceil(Fraction(d + 5, 2)), 5, 5),
    "T5.2": (3, {"no-overhang", "exact-size"}, lambda d: 2 * d + 2, 3, 4),
}


@dataclass
class Certificate:
    theorem: str
    d: int
    support_count: int
    min_nodes: int | None
    bound: int
    witness: list | None
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def attained(self) -> bool:
        return self.min_nodes == self.bound

    def to_json_obj(self) -> dict:
        return {
            "theorem": self.theorem,
            "d": self.d,
            "support_count": self.support_count,
            "min_nodes": self.min_nodes,
            "bound": self.bound,
            "witness": self.witness,
            "violations": self.violations,
        }


def exhaustive_bound_verify(theorem: str, d_max: int | None = None, long_running: bool = False) -> list[Certificate]:
    """Sweep all admissible supports up to ``d_max`` and record the minimal node counts."""
    if theorem not in THEOREMS:
        raise PreconditionError(f"unknown theorem tag {theorem!r}; expected one of {sorted(THEOREMS)}")
    n, cons, bound_fn, default, limit = THEOREMS[theorem]
    d_max = default if d_max is None else d_max
    if d_max > limit:
        raise PreconditionError(f"{theorem} sweep is limited to d <= {limit}")
    if theorem == "T5.2" and d_max > 3 and not long_running:
        raise PreconditionError("d = 4 for the 3D sweep needs the long-running flag")
    certs = []
    for d in range(1, d_max + 1):
        spec = SearchSpec(n, d, frozenset(cons))
        bound = bound_fn(d)
        best, witness, count, violations = None, None, 0, []
        for K in enumerate_supports(spec):
            count += 1
            m, D = min_nodes_over_signs(K, d)
            if m < bound:
                violations.append({"support": sorted(K), "min_nodes": m})
            if best is None or m < best:
                best, witness = m, D.to_json_obj()["points"]
        cert = Certificate(theorem, d, count, best, bound, witness, violations)
        log.info("%s d=%d supports=%d min=%s bound=%d", theorem, d, count, best, bound)
        certs.append(cert)
    return certs


def certificates_json(certs: Sequence[Certificate]) -> str:
    return json.dumps([c.to_json_obj() for c in certs], indent=2, sort_keys=True)


# -- decomposability oracle -------------------------------------------------------------------


@dataclass
class Decomposition:
    verdict: str  # indecomposable, decomposable, indeterminate
    parts: list = field(default_factory=list)
    kernel_dim: int = 0
    note: str = ""

    @property
    def decomposable(self) -> bool:
        return self.verdict == "decomposable"


def _residue(e: tuple) -> dict:
    """``X^e`` reduced modulo ``S`` by substituting ``X_0 = -(X_1 + ... + X_n)``."""
    k, rest = e[0], e[1:]
    n = len(rest)
    out = {}
    sign = -1 if k % 2 else 1
    for comp in _compositions(k, n):
        coef = _multinomial(k, comp) * sign
        key = tuple(a + b for a, b in zip(rest, comp))
        out[key] = out.get(key, 0) + coef
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(total, parts):
    out = 1
    left = total
    for p in parts:
        out *= comb(left, p)
        left -= p
    return out


def _kernel_basis(cols: list[dict]) -> tuple[list[int], list[int], list[list[Fraction]]]:
    """RREF of the matrix with the given sparse columns.

    Returns ``(pivot_cols, free_cols, rows)`` where ``rows[i]`` is the reduced row
    for ``pivot_cols[i]``.
    """
    keys = sorted({r for c in cols for r in c})
    ncols = len(cols)
    mat = [[Fraction(c.get(r, 0)) for c in cols] for r in keys]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    return pivots, free, mat[:r]


def decomposability_oracle(P: Polynomial, signs: Sequence[int] | None = None, cap: int = 20) -> Decomposition:
    """Exact test for a monomial-disjoint split ``P = P1 + P2`` with both parts multiples of the form.

    The form is ``sum signs[k] X_k`` (default: all plus).  A subset ``T`` of the
    monomials works exactly when its indicator lies in the kernel of the linear
    map "reduce modulo the form".  That kernel is parametrized by its free
    coordinates, and the 0/1 points are enumerated over those.
    """
    if signs is not None:
        P = Polynomial(P.nvars, {e: c * _sign_of(e, signs) for e, c in P.terms.items()})
    if not P:
        raise PreconditionError("zero polynomial")
    try:
        divide_by_s(P)
    except Exception as exc:
        raise PreconditionError("polynomial is not a multiple of the linear form") from exc
    monos = sorted(P.terms, reverse=True)
    if len(monos) > cap:
        return Decomposition("indeterminate", note=f"{len(monos)} monomials exceed the oracle cap {cap}")
    cols = []
    for e in monos:
        c = P.terms[e]
        cols.append({k: c * v for k, v in _residue(e).items() if v})
    pivots, free, rows = _kernel_basis(cols)
    if len(free) > cap:
        return Decomposition("indeterminate", kernel_dim=len(free), note="kernel too large")
    feasible = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        z = [None] * len(monos)
        for f, b in zip(free, bits):
            z[f] = b
        ok = True
        for pc, row in zip(pivots, rows):
            v = -sum(row[f] * b for f, b in zip(free, bits))
            if v not in (0, 1):
                ok = False
                break
            z[pc] = int(v)
        if not ok:
            continue
        T = frozenset(i for i, v in enumerate(z) if v)
        if 0 < len(T) < len(monos):
            feasible.append(T)
    if not feasible:
        return Decomposition("indecomposable", kernel_dim=len(free))
    minimal = [T for T in feasible if not any(U < T for U in feasible)]
    minimal = sorted(set(minimal), key=lambda T: sorted(T))
    covered = sorted(i for T in minimal for i in T)
    if covered == list(range(len(monos))):
        blocks = minimal
    else:
        T = min(feasible, key=lambda T: (len(T), sorted(T)))
        blocks = [T, frozenset(range(len(monos))) - T]
    parts = []
    for B in blocks:
        poly = Polynomial(P.nvars, {monos[i]: P.terms[monos[i]] for i in B})
        if signs is not None:
            poly = Polynomial(P.nvars, {e: c * _sign_of(e, signs) for e, c in poly.terms.items()})
        parts.append(poly)
    return Decomposition("decomposable", parts, kernel_dim=len(free))


def _sign_of(e, signs) -> int:
    s = 1
    for k, sg in zip(e, signs):
        if sg < 0 and k % 2:
            s = -s
    return s


def support_components_of(P: Polynomial) -> int:
    """Number of connected components of the diagram support of ``P / S``."""
    from .diagram import components, diagram_of

    P = strip_common_monomial(P)
    Q = divide_by_s(P)
    return len(components(diagram_of(Q, P.degree).support))


def is_indecomposable(P: Polynomial) -> tuple[bool | None, str]:
    """``(verdict, provenance)``; verdict ``None`` when neither the hint nor the oracle decides."""
    if support_components_of(P) > 1:
        return False, "disconnected-support"
    res = decomposability_oracle(P)
    if res.verdict == "indeterminate":
        return None, "connected-support hint only"
    return res.verdict == "indecomposable", "oracle"


# -- reduction traces ---------------------------------------------------------------------------


def reduction_trace_2d(D, metric: str = "sc"):
    """Fill a 2D diagram to maximal support; returns the final diagram and the receipts."""
    from .transforms import fill_to_maximal_2d

    return fill_to_maximal_2d(D, metric)
