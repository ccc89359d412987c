"""Text grammar for polynomials and monomial maps.

Polynomials use affine variables ``x1..xn`` or homogeneous variables ``X0..Xn``
(never mixed in one expression).  Coefficients are integers or ``a/b``
fractions, powers use ``^``, and multiplication is juxtaposition or ``*``.
The unicode minus sign is accepted.  Parentheses are allowed for convenience.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import Polynomial


class GrammarError(ValueError):
    def __init__(self, message: str, offset: int | None = None, text: str | None = None):
        self.offset = offset
        self.text = text
        if offset is not None:
            message = f"{message} at offset {offset}"
        super().__init__(message)


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d+)?)
  | (?P<var>[xX]\d+|[zZ]\d+)
  | (?P<op>[+\-*^()])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    value: str
    offset: int


def tokenize(text: str) -> list[Token]:
    text = text.replace("−", "-").replace("·", "*")
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GrammarError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


@dataclass
class ParsedPolynomial:
    poly: Polynomial
    homogeneous_vars: bool


class _Parser:
    def __init__(self, text: str, nvars: int | None, homogeneous: bool | None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.homogeneous = homogeneous
        self.raw_terms: list = []
        self.max_index = -1
        self.min_index = None
        self.nvars = nvars

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise GrammarError(msg, tok.offset, self.text)

    # Expressions are evaluated into dict form: exponent-by-variable-index maps.
    def parse(self):
        expr = self.expression()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().value!r}")
        return expr

    def expression(self):
        terms = {}
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            sign = -1 if tok.value == "-" else 1
        while True:
            for k, c in self.term().items():
                terms[k] = terms.get(k, 0) + sign * c
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.take()
                sign = -1 if tok.value == "-" else 1
                continue
            break
        return {k: c for k, c in terms.items() if c}

    def term(self):
        result = None
        while True:
            tok = self.peek()
            if tok.kind in ("num", "var") or (tok.kind == "op" and tok.value == "("):
                f = self.factor()
                result = f if result is None else _mul(result, f)
                if self.peek().kind == "op" and self.peek().value == "*":
                    self.take()
                    nxt = self.peek()
                    if not (nxt.kind in ("num", "var") or (nxt.kind == "op" and nxt.value == "(")):
                        self.error("expected a factor after '*'")
                continue
            break
        if result is None:
            self.error("expected a term" if tok.kind != "end" else "unexpected end of input")
        return result

    def factor(self):
        tok = self.take()
        if tok.kind == "num":
            base = {(): Fraction(tok.value.replace(" ", ""))}
        elif tok.kind == "var":
            base = {((self.variable_index(tok), 1),): Fraction(1)}
        else:  # "("
            base = self.expression()
            close = self.take()
            if close.kind != "op" or close.value != ")":
                self.error("expected ')'", close)
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            exp = self.take()
            if exp.kind != "num" or "/" in exp.value:
                self.error("expected a non-negative integer exponent", exp)
            k = int(exp.value)
            out = {(): Fraction(1)}
            for _ in range(k):
                out = _mul(out, base)
            base = out
        return base

    def variable_index(self, tok: Token) -> int:
        letter, idx = tok.value[0], int(tok.value[1:])
        if letter in "zZ":
            self.error(f"unknown variable {tok.value!r}", tok)
        homog = letter == "X"
        if self.homogeneous is None:
            self.homogeneous = homog
        elif self.homogeneous != homog:
            self.error(f"cannot mix affine and homogeneous variables ({tok.value!r})", tok)
        if not homog and idx == 0:
            self.error("affine variables start at x1", tok)
        pos = idx if homog else idx - 1
        if self.nvars is not None and pos >= self.nvars:
            self.error(f"unknown variable {tok.value!r} for {self.nvars} variables", tok)
        self.max_index = max(self.max_index, pos)
        return pos


def _mul(a, b):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            merged = dict(ka)
            for v, e in kb:
                merged[v] = merged.get(v, 0) + e
            key = tuple(sorted(merged.items()))
            out[key] = out.get(key, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def parse_polynomial_ex(text: str, nvars: int | None = None, homogeneous: bool | None = None) -> ParsedPolynomial:
    """Parse ``text`` and report which variable family it used.

    ``nvars`` counts ring variables (``n`` for affine, ``n+1`` for homogeneous).
    When omitted it is inferred from the highest variable index seen.
    """
    parser = _Parser(text, nvars, homogeneous)
    expr = parser.parse()
    homog = bool(parser.homogeneous)
    if nvars is None:
        nvars = parser.max_index + 1
        if homog:
            nvars = max(nvars, 2)
        nvars = max(nvars, 1)
    terms = {}
    for key, c in expr.items():
        e = [0] * nvars
        for v, k in key:
            e[v] += k
        terms[tuple(e)] = c
    return ParsedPolynomial(Polynomial(nvars, terms), homog)


def parse_polynomial(text: str, nvars: int | None = None, homogeneous: bool | None = None) -> Polynomial:
    return parse_polynomial_ex(text, nvars, homogeneous).poly


def _monomial_text(e, homogeneous: bool) -> str:
    parts = []
    for i, k in enumerate(e):
        if not k:
            continue
        name = f"X{i}" if homogeneous else f"x{i + 1}"
        parts.append(name if k == 1 else f"{name}^{k}")
    return " ".join(parts)


def format_polynomial(p: Polynomial, homogeneous: bool = False) -> str:
    """Canonical text: graded-lex order, highest degree first."""
    if not p:
        return "0"
    pieces = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_text(e, homogeneous)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag} {mono}"
        else:
            body = str(mag)
        if idx == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


# -- monomial maps ----------------------------------------------------------------

_MAP_HEADER = re.compile(
    r"^\s*map\s+source\s*=\s*Q\(\s*(\d+)\s*,\s*(\d+)\s*\)\s+target\s*=\s*Q\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*\[(.*)\]\s*$",
    re.DOTALL,
)
_MAP_COMPONENT = re.compile(r"^\s*(.*?)\s*:\s*([+\-−]?\s*\d+(?:\s*/\s*\d+)?)\s*$", re.DOTALL)


def parse_map(text: str):
    """Parse ``map source=Q(a,b) target=Q(c,e) [ monomial : signed |C|^2 ; ... ]``.

    Each component is a monomial in ``z0..zn`` followed by its slot sign times
    its squared coefficient modulus.
    """
    from .quadrics import HyperquadricSignature, MonomialMap, MapComponent

    m = _MAP_HEADER.match(text)
    if not m:
        raise GrammarError("expected 'map source=Q(a,b) target=Q(c,d) [ ... ]'", 0, text)
    a, b, c, e, body = m.groups()
    source = HyperquadricSignature(int(a), int(b))
    target = HyperquadricSignature(int(c), int(e))
    nv = source.nvars
    body_offset = m.start(5)
    comps = []
    pos = 0
    for chunk in body.split(";"):
        start = body_offset + pos
        pos += len(chunk) + 1
        if not chunk.strip():
            continue
        cm = _MAP_COMPONENT.match(chunk)
        if not cm:
            raise GrammarError("expected 'monomial : signed coefficient'", start, text)
        mono_text, val = cm.groups()
        val = Fraction(val.replace("−", "-").replace(" ", ""))
        if val == 0:
            raise GrammarError("component coefficient must be nonzero", start, text)
        exps = [0] * nv
        for tok in mono_text.replace("*", " ").split():
            vm = re.fullmatch(r"[zZ](\d+)(?:\^(\d+))?", tok)
            if not vm:
                raise GrammarError(f"bad monomial factor {tok!r}", start, text)
            idx = int(vm.group(1))
            if idx >= nv:
                raise GrammarError(f"unknown variable z{idx} for source Q({a},{b})", start, text)
            exps[idx] += int(vm.group(2) or 1)
        comps.append(MapComponent(abs(val), tuple(exps), 1 if val > 0 else -1))
    return MonomialMap(source, target, tuple(comps))


def format_map(f) -> str:
    parts = []
    for comp in f.components:
        mono = " ".join(f"z{i}^{k}" for i, k in enumerate(comp.exponent) if k) or "1"
        sign = "+" if comp.slot > 0 else "-"
        parts.append(f"{mono} : {sign}{comp.coef_sq}")
    return (
        f"map source=Q({f.source.positive},{f.source.negative}) "
        f"target=Q({f.target.positive},{f.target.negative}) [ " + " ; ".join(parts) + " ]"
    )
