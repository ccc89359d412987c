"""Generators for sharp and extremal families and the sharp-polynomial search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import InternalContradiction, PreconditionError
from .polynomial import Polynomial, class_membership, equals_one_on_hyperplane, s_form


def _assert_in_H(p: Polynomial, what: str) -> Polynomial:
    if not p.has_nonnegative_coefficients():
        raise InternalContradiction(f"{what} has a negative coefficient")
    if not equals_one_on_hyperplane(p):
        raise InternalContradiction(f"{what} is not 1 on the hyperplane s = 1")
    return p


def top_degree_monomials(p: Polynomial) -> list[tuple[int, ...]]:
    d = p.degree
    return sorted((e for e in p.terms if sum(e) == d), reverse=True)


# -- Whitney-type families ------------------------------------------------------------


def replace_monomial(p: Polynomial, m: Sequence[int], g: Polynomial) -> Polynomial:
    """``p - c x^m + c x^m g`` where ``c`` is the coefficient of ``x^m`` in ``p``."""
    m = tuple(m)
    c = p.coeff(m)
    if not c:
        raise PreconditionError(f"monomial {m} is not a term of p")
    mono = Polynomial.monomial(m, c)
    return p - mono + mono * g


def whitney(n: int, d: int, choices: Sequence[Sequence[int]] | None = None) -> Polynomial:
    """Generalized Whitney polynomial in ``n`` variables of degree ``d``.

    Starts from ``s`` and, for ``k = 2..d``, replaces a degree ``k-1`` monomial
    ``m`` of the current polynomial by ``m * s``.  ``choices[k-2]`` names that
    monomial as an exponent tuple; the default is the pure power of the last
    variable.  The result has ``d(n-1) + 1`` terms.
    """
    if n < 1 or d < 1:
        raise PreconditionError("need n >= 1 and d >= 1")
    if choices is not None and len(choices) != d - 1:
        raise PreconditionError(f"need {d - 1} choices, got {len(choices)}")
    s = s_form(n)
    p = s
    for k in range(2, d + 1):
        if choices is None:
            m = tuple([0] * (n - 1) + [k - 1])
        else:
            m = tuple(choices[k - 2])
            if len(m) != n or sum(m) != k - 1:
                raise PreconditionError(f"choice {m} must be a degree-{k - 1} exponent in {n} variables")
        if not p.coeff(m):
            raise PreconditionError(f"choice {m} is not a monomial of the degree-{k - 1} polynomial")
        p = replace_monomial(p, m, s)
    if p.monomial_count != d * (n - 1) + 1:
        raise InternalContradiction(f"Whitney polynomial has {p.monomial_count} terms, expected {d * (n - 1) + 1}")
    return _assert_in_H(p, "Whitney polynomial")


def faran_cubics() -> tuple[Polynomial, Polynomial]:
    """The two-variable sharp cubic and its three-variable lift ``x2 -> x2 + x3``."""
    p2 = Polynomial(2, {(3, 0): 1, (1, 1): 3, (0, 3): 1})
    lifted = p2.embed(3, [0, 1])
    p3 = lifted.substitute(1, Polynomial(3, {(0, 1, 0): 1, (0, 0, 1): 1}))
    _assert_in_H(p2, "two-variable cubic")
    _assert_in_H(p3, "three-variable cubic")
    if p3.monomial_count != 7:
        raise InternalContradiction("three-variable cubic should have 7 terms")
    return p2, p3


def faran3(perm: Sequence[int] = (0, 1, 2)) -> Polynomial:
    """The sharp three-variable cubic with variables permuted (new ``j`` is old ``perm[j]``)."""
    return faran_cubics()[1].permute(perm)


def sharp_extend(p: Polynomial, m: Sequence[int], g="s") -> Polynomial:
    """Inductive sharp extension ``p - m + m g`` for ``g`` = ``s`` or a permuted cubic.

    ``g`` may be ``"s"``, ``"faran3"``, a permutation tuple of the cubic, or a
    ready polynomial.  The degree grows by 1 (``s``) or 3 (cubic) and the term
    count by twice that.
    """
    if p.nvars != 3:
        raise PreconditionError("sharp_extend works in three variables")
    m = tuple(m)
    d = p.degree
    if sum(m) != d or not p.coeff(m):
        raise PreconditionError(f"{m} is not a degree-{d} monomial of p")
    if isinstance(g, str):
        if g == "s":
            g = s_form(3)
        elif g == "faran3":
            g = faran3()
        else:
            raise PreconditionError(f"unknown generator {g!r}")
    elif isinstance(g, (tuple, list)):
        g = faran3(g)
    k = g.degree
    out = replace_monomial(p, m, g)
    _assert_in_H(out, "extended polynomial")
    if out.degree != d + k:
        raise InternalContradiction("extension has the wrong degree")
    expected = p.monomial_count - 1 + g.monomial_count
    if out.monomial_count != expected:
        raise InternalContradiction(f"extension has {out.monomial_count} terms, expected {expected}")
    return out


def dkr_sharp_2d(d: int) -> Polynomial:
    """Two-variable sharp polynomial of odd degree ``d`` with ``(d+3)/2`` terms.

    Built from the trace recurrence ``g_k = x g_{k-1} + y g_{k-2}`` with
    ``g_0 = 2`` and ``g_1 = x``; the result is ``g_d + (-1)^(d+1) y^d``.
    """
    if d < 1 or d % 2 == 0:
        raise PreconditionError("degree must be odd and positive")
    x = Polynomial(2, {(1, 0): 1})
    y = Polynomial(2, {(0, 1): 1})
    g_prev, g = Polynomial.constant(2, 2), x
    for _ in range(2, d + 1):
        g_prev, g = g, x * g + y * g_prev
    p = g + y**d * (-1) ** (d + 1)
    if p.monomial_count != (d + 3) // 2:
        raise InternalContradiction(f"expected {(d + 3) // 2} terms, got {p.monomial_count}")
    # constancy on x + y = 1: substitute y -> 1 - x and compare with 1
    one_minus_x = Polynomial(2, {(0, 0): 1, (1, 0): -1})
    if p.substitute(1, one_minus_x) != 1:
        raise InternalContradiction("recurrence polynomial is not 1 on x + y = 1")
    return _assert_in_H(p, "recurrence polynomial")


# -- undoing decomposition ---------------------------------------------------------------


def undoing_decomposition(p: Polynomial) -> dict[tuple[int, ...], Fraction]:
    """Sub-degree coefficients ``c_alpha`` with ``p = s^d + sum c_alpha x^alpha (1 - s^(d-|alpha|))``."""
    cls = class_membership(p)
    if not cls.in_H:
        raise PreconditionError("polynomial is not in the positive hyperplane class")
    d = p.degree
    coeffs = {e: c for e, c in p.terms.items() if sum(e) < d}
    if not coeffs and p != s_form(p.nvars) ** d:
        raise InternalContradiction("homogeneous member differs from s^d")
    if rebuild(p.nvars, d, coeffs) != p:
        raise InternalContradiction("rebuild does not reproduce p")
    return coeffs


def rebuild(n: int, d: int, coeffs: dict) -> Polynomial:
    s = s_form(n)
    powers = {}
    out = s**d
    for alpha, c in coeffs.items():
        k = d - sum(alpha)
        if k <= 0:
            raise PreconditionError(f"exponent {alpha} is not of degree below {d}")
        if k not in powers:
            powers[k] = s**k
        out = out + Polynomial.monomial(alpha, c) * (1 - powers[k])
    return out


# -- search for sharp polynomials with maximal support --------------------------------------


def _multinomial(total: int, parts: Sequence[int]) -> int:
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve ``rows * c = rhs`` exactly.

    Returns ``("unique", c)``, ``("inconsistent", None)`` or ``("degenerate", None)``
    (consistent with a free direction).
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    piv_cols = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / Fraction(m[r][col])
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            return "inconsistent", None
    if r < ncols:
        return "degenerate", None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        sol[col] = m[i][-1]
    return "unique", sol


@dataclass
class PairSolution:
    pair: tuple[int, int]
    coeffs: dict  # exponent (3-tuple) -> Fraction
    zeros: tuple


@dataclass
class FilledSharpReport:
    d: int
    results: list
    pair_solutions: dict = field(default_factory=dict)
    degenerate_systems: int = 0
    combinations_checked: int = 0


def _pair_candidates(d: int, pair: tuple[int, int]) -> list[tuple[int, int, int]]:
    i, j = pair
    out = []
    for a in range(1, d):
        for b in range(1, d - a):
            e = [0, 0, 0]
            e[i], e[j] = a, b
            out.append(tuple(e))
    return out


def _pair_rows(d: int, pair: tuple[int, int]) -> list[tuple[int, int, int]]:
    i, j = pair
    rows = []
    for a in range(1, d):
        e = [0, 0, 0]
        e[i], e[j] = a, d - a
        rows.append(tuple(e))
    return rows


def _entry(d: int, beta, alpha) -> int:
    rest = [b - a for a, b in zip(alpha, beta)]
    if min(rest) < 0:
        return 0
    return _multinomial(d - sum(alpha), rest)


def _pair_solutions(d: int, pair: tuple[int, int], report: FilledSharpReport) -> list[PairSolution]:
    """All subtraction patterns on one variable pair meeting the sharp equalities.

    With ``t`` subtracted monomials the pair must have exactly ``2t`` vanishing
    non-pure degree-``d`` coefficients and all others positive.
    """
    cands = _pair_candidates(d, pair)
    rows = _pair_rows(d, pair)
    sols = [PairSolution(pair, {}, ())]
    for t in range(1, (d - 1) // 2 + 1):
        for A in itertools.combinations(cands, t):
            for Z in itertools.combinations(range(len(rows)), 2 * t):
                mat = [[Fraction(_entry(d, rows[z], a)) for a in A] for z in Z]
                rhs = [Fraction(_multinomial(d, rows[z])) for z in Z]
                status, c = _solve_exact(mat, rhs)
                if status == "degenerate":
                    # A free direction would reach a boundary with fewer terms,
                    # which the two-variable bound forbids; such systems carry no sharp
                    # positive solution and are only counted.
                    report.degenerate_systems += 1
                    continue
                if status != "unique" or any(v <= 0 for v in c):
                    continue
                ok = True
                for idx, beta in enumerate(rows):
                    if idx in Z:
                        continue
                    val = _multinomial(d, beta) - sum(ci * _entry(d, beta, a) for ci, a in zip(c, A))
                    if val < 0:
                        ok = False
                        break
                    if val == 0:
                        raise InternalContradiction(
                            f"pair {pair} pattern {A} has more than {2 * t} vanishing rows, "
                            "contradicting the two-variable bound"
                        )
                if ok:
                    sols.append(PairSolution(pair, dict(zip(A, c)), Z))
    return sols


def filledsharp_search(d: int, long_running: bool = False) -> FilledSharpReport:
    """Sharp members of the positive class in 3 variables with maximal diagram support.

    Uses the subtraction form ``p = s^d + sum c_alpha x^alpha (1 - s^(d-|alpha|))``.
    Sub-degree monomials depend on exactly two variables (no term in all three,
    and the only pure terms are ``x_i^d``).  Equality in the four counting
    constraints splits the search by variable pair; pair solutions are then
    combined and each candidate is verified exactly.
    """
    from .diagram import diagram_of_polynomial, simplex_points

    if d < 1:
        raise PreconditionError("d must be positive")
    if d > 7:
        raise PreconditionError("the search is only certified for d <= 7")
    if d > 5 and not long_running:
        raise PreconditionError("d in {6, 7} needs the long-running flag")
    report = FilledSharpReport(d, [])
    pairs = [(0, 1), (0, 2), (1, 2)]
    per_pair = {pr: _pair_solutions(d, pr, report) for pr in pairs}
    report.pair_solutions = {pr: len(v) for pr, v in per_pair.items()}
    triple_rows = [e for e in _all_degree(d) if min(e) > 0]
    full = set(simplex_points(3, d))
    for combo in itertools.product(*(per_pair[pr] for pr in pairs)):
        T = sum(len(ps.coeffs) for ps in combo)
        w = T - (d - 1)
        if w < 0:
            continue
        report.combinations_checked += 1
        coeffs = {}
        for ps in combo:
            coeffs.update(ps.coeffs)
        nonzero = 0
        ok = True
        for beta in triple_rows:
            val = _multinomial(d, beta) - sum(c * _entry(d, beta, a) for a, c in coeffs.items())
            if val < 0:
                ok = False
                break
            nonzero += val != 0
        if not ok or nonzero != w:
            continue
        p = rebuild(3, d, coeffs)
        if p.monomial_count != 2 * d + 1:
            continue
        if not (p.has_nonnegative_coefficients() and equals_one_on_hyperplane(p)):
            continue
        if set(diagram_of_polynomial(p).support) != full:
            continue
        report.results.append(p)
    report.results.sort(key=lambda q: sorted(q.terms.items()))
    return report


def _all_degree(d: int) -> list[tuple[int, int, int]]:
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


# -- family specs ------------------------------------------------------------------------


@dataclass(frozen=True)
class SharpFamilySpec:
    kind: str  # whitney, faran2, faran3, dkr2d, inductive
    n: int = 3
    d: int = 1
    choices: tuple = ()

    def generate(self) -> Polynomial:
        if self.kind == "whitney":
            return whitney(self.n, self.d, list(self.choices) or None)
        if self.kind == "faran2":
            return faran_cubics()[0]
        if self.kind == "faran3":
            return faran3(self.choices or (0, 1, 2))
        if self.kind == "dkr2d":
            return dkr_sharp_2d(self.d)
        if self.kind == "inductive":
            # choices: sequence of (generator, monomial-or-None); start from s
            p = s_form(3)
            for gen, mono in self.choices:
                if mono is None:
                    mono = top_degree_monomials(p)[-1]
                p = sharp_extend(p, mono, gen)
            return p
        raise PreconditionError(f"unknown family {self.kind!r}")
