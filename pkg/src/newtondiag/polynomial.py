"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero ``Fraction`` coefficients.
Affine polynomials live in ``x1..xn`` (tuple index ``i`` is ``x_{i+1}``);
homogeneous ones live in ``X0..Xn`` (tuple index ``i`` is ``X_i``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

MultiIndex = tuple[int, ...]


class PolynomialError(ValueError):
    pass


class NotDivisible(PolynomialError):
    """Raised when a polynomial is not an exact multiple of the hyperplane form."""


class DegenerateInput(PolynomialError):
    pass


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True, eq=False)
class Polynomial:
    nvars: int
    terms: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != self.nvars:
                raise PolynomialError(f"exponent {e} has wrong length for {self.nvars} variables")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "terms", clean)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> Polynomial:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> Polynomial:
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def linear_sum(cls, nvars: int) -> Polynomial:
        """Sum of all variables: ``s`` in affine coordinates, ``S`` in homogeneous ones."""
        return cls(nvars, {tuple(int(i == j) for j in range(nvars)): 1 for i in range(nvars)})

    # -- basic queries --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def monomial_count(self) -> int:
        return len(self.terms)

    def coeff(self, exponent: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    @property
    def min_degree(self) -> int:
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, k: int) -> Polynomial:
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def sorted_terms(self) -> list[tuple[MultiIndex, Fraction]]:
        """Terms in graded-lex order: highest degree first, ties by descending exponent tuple."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def common_monomial(self) -> MultiIndex:
        if not self.terms:
            raise PolynomialError("zero polynomial has no common monomial")
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise PolynomialError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        out: dict[MultiIndex, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        c = _frac(c)
        return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def shift(self, exponent: Sequence[int]) -> Polynomial:
        """Multiply by the monomial ``X^exponent``; negative entries divide (caller checks)."""
        return Polynomial(
            self.nvars, {tuple(a + b for a, b in zip(e, exponent)): c for e, c in self.terms.items()}
        )

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise PolynomialError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [_frac(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            total += v
        return total

    def substitute(self, var: int, replacement: Polynomial) -> Polynomial:
        """Replace variable ``var`` by ``replacement`` (same variable count)."""
        replacement = self._coerce(replacement)
        powers: dict[int, Polynomial] = {}
        out = Polynomial.zero(self.nvars)
        acc: dict[MultiIndex, Fraction] = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                acc[e] = acc.get(e, 0) + c
                continue
            if k not in powers:
                powers[k] = replacement**k
            rest = list(e)
            rest[var] = 0
            for e2, c2 in powers[k].terms.items():
                e3 = tuple(a + b for a, b in zip(rest, e2))
                acc[e3] = acc.get(e3, 0) + c * c2
        out = Polynomial(self.nvars, acc)
        return out

    def compose(self, images: Sequence[Polynomial]) -> Polynomial:
        """Substitute every variable simultaneously: ``X_i -> images[i]``."""
        if len(images) != self.nvars:
            raise PolynomialError("need one image per variable")
        target = images[0].nvars
        cache: dict[tuple[int, int], Polynomial] = {}
        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            term = Polynomial.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[i, k] = images[i] ** k
                    term = term * cache[i, k]
            out = out + term
        return out

    def permute(self, perm: Sequence[int]) -> Polynomial:
        """New variable ``j`` is old variable ``perm[j]``."""
        return Polynomial(self.nvars, {tuple(e[p] for p in perm): c for e, c in self.terms.items()})

    def embed(self, nvars: int, positions: Sequence[int]) -> Polynomial:
        """Place variable ``i`` at index ``positions[i]`` of a larger ring."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * nvars
            for i, k in enumerate(e):
                e2[positions[i]] += k
            out[tuple(e2)] = out.get(tuple(e2), 0) + c
        return Polynomial(nvars, out)

    def __repr__(self) -> str:
        from .grammar import format_polynomial

        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"


# -- hyperplane forms -----------------------------------------------------------


def s_form(n: int) -> Polynomial:
    """Affine hyperplane form ``s = x1 + ... + xn``."""
    return Polynomial.linear_sum(n)


def S_form(n: int) -> Polynomial:
    """Homogeneous hyperplane form ``S = X0 + ... + Xn`` (n+1 variables)."""
    return Polynomial.linear_sum(n + 1)


def homogenize_and_flip(p: Polynomial) -> Polynomial:
    """Homogenize ``p - 1`` with ``t`` to degree ``deg p`` and set ``t = -X0``.

    The result vanishes on ``X0 + ... + Xn = 0`` exactly when ``p = 1`` on ``s = 1``.
    """
    if not p:
        raise DegenerateInput("zero polynomial")
    d = p.degree
    if d <= 0:
        raise DegenerateInput("constant polynomial has no homogenization of positive degree")
    out: dict[MultiIndex, Fraction] = {}
    q = p - 1
    for e, c in q.terms.items():
        k = d - sum(e)
        out[(k,) + e] = out.get((k,) + e, 0) + c * (-1) ** k
    return Polynomial(p.nvars + 1, out)


def dehomogenize(P: Polynomial) -> Polynomial:
    """Inverse of :func:`homogenize_and_flip`: set ``X0 = -1`` and add 1."""
    out: dict[MultiIndex, Fraction] = {}
    for e, c in P.terms.items():
        out[e[1:]] = out.get(e[1:], 0) + c * (-1) ** e[0]
    return Polynomial(P.nvars - 1, out) + 1


def divide_by_s(P: Polynomial, pivot: int = 0) -> Polynomial:
    """Exact quotient ``Q = P / S`` where ``S`` is the sum of all variables.

    Elimination always cancels the largest remaining term (graded-lex, with
    variable ``pivot`` ranked first) using the leading monomial ``X_pivot`` of ``S``.
    Raises :class:`NotDivisible` on a nonzero remainder.
    """
    nv = P.nvars
    if not P.is_homogeneous():
        raise PolynomialError("divide_by_s needs a homogeneous polynomial")
    if not P:
        return Polynomial.zero(nv)
    order = [pivot] + [i for i in range(nv) if i != pivot]

    def key(e):
        return tuple(-e[i] for i in order)

    rem = dict(P.terms)
    heap = [(key(e), e) for e in rem]
    heapq.heapify(heap)
    quotient: dict[MultiIndex, Fraction] = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = rem.pop(e, None)
        if not c:
            continue
        if e[pivot] == 0:
            raise NotDivisible(f"remainder term at exponent {e}")
        q = list(e)
        q[pivot] -= 1
        q = tuple(q)
        quotient[q] = c
        for j in range(nv):
            if j == pivot:
                continue
            f = list(q)
            f[j] += 1
            f = tuple(f)
            if f in rem:
                rem[f] -= c
            else:
                rem[f] = -c
                heapq.heappush(heap, (key(f), f))
    return Polynomial(nv, quotient)


def is_multiple_of_s(P: Polynomial) -> bool:
    try:
        divide_by_s(P)
    except (NotDivisible, PolynomialError):
        return False
    return True


def p_degree_and_count(P: Polynomial) -> tuple[int, int, int]:
    """``(p_degree, degree, N)`` where p-degree removes the gcd monomial of all terms."""
    if not P:
        raise PolynomialError("zero polynomial")
    g = P.common_monomial()
    return P.degree - sum(g), P.degree, P.monomial_count


def p_degree(P: Polynomial) -> int:
    return p_degree_and_count(P)[0]


def strip_common_monomial(P: Polynomial) -> Polynomial:
    g = P.common_monomial()
    return P.shift([-v for v in g])


@dataclass(frozen=True)
class ClassReport:
    in_I: bool
    in_H: bool
    degree: int
    p_degree: int
    monomial_count: int
    decomposability_hint: str | None

    def as_dict(self) -> dict:
        return {
            "in_I": self.in_I,
            "in_H": self.in_H,
            "degree": self.degree,
            "p_degree": self.p_degree,
            "monomial_count": self.monomial_count,
            "decomposability_hint": self.decomposability_hint,
        }


def equals_one_on_hyperplane(p: Polynomial) -> bool:
    """Whether ``p - 1`` is an exact multiple of ``s - 1``."""
    if p.degree <= 0:
        return p == 1
    return is_multiple_of_s(homogenize_and_flip(p))


def class_membership(p: Polynomial, n: int | None = None) -> ClassReport:
    """Classify an affine polynomial against the two hyperplane classes.

    ``in_I`` means the homogenized-and-flipped image is a multiple of ``S``;
    ``in_H`` additionally requires nonnegative coefficients.
    """
    from .diagram import diagram_of, support_geometry

    if n is not None and n != p.nvars:
        raise PolynomialError(f"polynomial has {p.nvars} variables, expected {n}")
    if not p:
        return ClassReport(False, False, -1, 0, 0, None)
    d = p.degree
    if d == 0:
        return ClassReport(False, p == 1, 0, 0, 1, None)
    P = homogenize_and_flip(p)
    pdeg = p_degree(P)
    try:
        Q = divide_by_s(P)
    except NotDivisible:
        return ClassReport(False, False, d, pdeg, p.monomial_count, None)
    in_H = all(c > 0 for c in p.terms.values())
    geo = support_geometry(diagram_of(Q, d).support)
    hint = "connected-support" if geo.connected else "disconnected-support"
    return ClassReport(True, in_H, d, pdeg, p.monomial_count, hint)


def variables_used(p: Polynomial) -> set[int]:
    return {i for e in p.terms for i, k in enumerate(e) if k}


def from_terms(nvars: int, items: Iterable[tuple[Sequence[int], object]]) -> Polynomial:
    out: dict[MultiIndex, Fraction] = {}
    for e, c in items:
        out[tuple(e)] = out.get(tuple(e), 0) + _frac(c)
    return Polynomial(nvars, out)
