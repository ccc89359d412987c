"""Degree-bound formulas, verifiers and the two dimension-reduction constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CapExceeded, InternalContradiction, PreconditionError
from .polynomial import (
    Polynomial,
    class_membership,
    divide_by_s,
    homogenize_and_flip,
    is_multiple_of_s,
    p_degree,
    strip_common_monomial,
)

# Tag -> (short description, quantity bounded)
TAGS = {
    "T1.1i": ("positive coefficients, n = 2: d <= 2N - 3", "degree"),
    "T1.1ii": ("positive coefficients, n >= 2: d <= (4/3)(2N - 3)/(2n - 3)", "degree"),
    "T1.2i": ("indecomposable, n = 2: d <= 2N - 3", "degree"),
    "T1.2ii": ("positive coefficients, n = 3: d <= (N - 1)/2", "degree"),
    "T1.2iii": ("indecomposable without overhang, n = 3: d <= (N - 1)/2", "degree"),
    "T1.2iv": ("indecomposable, n >= 2: d <= (4/3)(2N - 3)/(2n - 3)", "degree"),
    "T2.2": ("projective indecomposable, n = 2: p-degree <= 2N(P) - 5", "p-degree"),
    "T1.3i": ("monomial CR map from a 2-dimensional source: deg <= 2N - 3", "degree"),
    "T1.3ii": ("monomial sphere map from S^5 to S^(2N-1): deg <= (N - 1)/2", "degree"),
    "T1.3iii": ("monomial CR map, general n: p-degree <= (n - 1)(2N(P) - 5)", "p-degree"),
    "T7.1": ("projective indecomposable with a pure monomial: p-degree <= 2n(2N - 5)/(3n^2 - 3n - 2)", "p-degree"),
    "T7.2": ("projective indecomposable: p-degree <= (n - 1)(2N - 5)", "p-degree"),
    "C7.4": ("positive coefficients, n >= 3, a top monomial in <= 3 variables: d <= (N - 1)/(n - 1)", "degree"),
}

STATUSES = ("proved", "conditional", "hint", "withheld")


def _f(x) -> Fraction:
    return Fraction(x)


def formula(tag: str, n: int, N: int) -> Fraction:
    """Exact value of the bound named by ``tag`` for ``n`` variables and ``N`` terms."""
    N = _f(N)
    if tag in ("T1.1i", "T1.2i", "T1.3i"):
        return 2 * N - 3
    if tag in ("T1.1ii", "T1.2iv"):
        return Fraction(4, 3) * (2 * N - 3) / (2 * n - 3)
    if tag in ("T1.2ii", "T1.2iii", "T1.3ii"):
        return (N - 1) / 2
    if tag == "T2.2":
        return 2 * N - 5
    if tag == "T7.1":
        return Fraction(2 * n) * (2 * N - 5) / (3 * n * n - 3 * n - 2)
    if tag in ("T7.2", "T1.3iii"):
        return (n - 1) * (2 * N - 5)
    if tag == "C7.4":
        return (N - 1) / (n - 1)
    raise PreconditionError(f"unknown bound tag {tag!r}")


CLASS_TAGS = {
    "positive2d": ["T1.1i", "T1.1ii"],
    "positive3d": ["T1.2ii", "T1.1ii"],
    "indecomposable2d": ["T1.2i", "T1.2iv"],
    "indecomposable-general": ["T1.2iv", "T7.1", "T7.2"],
    "crmap": ["T1.3i", "T1.3ii", "T1.3iii"],
}


@dataclass(frozen=True)
class Bound:
    tag: str
    value: Fraction
    status: str = "proved"
    quantity: str = "degree"
    note: str = ""

    def to_json_obj(self) -> dict:
        return {
            "tag": self.tag,
            "value": str(self.value),
            "status": self.status,
            "quantity": self.quantity,
            "note": self.note,
        }


def bound_table(n: int, N: int, cls: str) -> list[Bound]:
    """All bounds of a class as exact rationals.

    For the projective tags (``T7.1``, ``T7.2``) ``N`` is the projective term
    count; everywhere else it is the affine count.
    """
    if n < 2:
        raise PreconditionError("unbounded: for n = 1 no degree bound in terms of N exists")
    if N < 1:
        raise PreconditionError("N must be positive")
    if cls not in CLASS_TAGS:
        raise PreconditionError(f"unknown class {cls!r}; expected one of {sorted(CLASS_TAGS)}")
    out = []
    for tag in CLASS_TAGS[cls]:
        if tag in ("T1.1i", "T1.2i") and n != 2:
            continue
        if tag == "T1.2ii" and n != 3:
            continue
        if tag == "T7.1" and n < 3:
            continue
        out.append(Bound(tag, formula(tag, n, N), "proved", TAGS[tag][1]))
    return out


@dataclass
class BoundReport:
    actual_degree: int
    actual_p_degree: int | None = None
    applicable_bounds: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def _actual(self, b: Bound) -> int:
        if b.quantity == "p-degree" and self.actual_p_degree is not None:
            return self.actual_p_degree
        return self.actual_degree

    @property
    def satisfied(self) -> dict:
        return {b.tag: self._actual(b) <= b.value for b in self.applicable_bounds if b.status != "withheld"}

    @property
    def sharp(self) -> dict:
        return {b.tag: self._actual(b) == b.value for b in self.applicable_bounds if b.status != "withheld"}

    def violated_proved(self) -> list[str]:
        sat = self.satisfied
        return [b.tag for b in self.applicable_bounds if b.status == "proved" and not sat[b.tag]]

    def bound(self, tag: str) -> Bound | None:
        return next((b for b in self.applicable_bounds if b.tag == tag), None)

    def to_json_obj(self) -> dict:
        sat, sh = self.satisfied, self.sharp
        return {
            "actual_degree": self.actual_degree,
            "actual_p_degree": self.actual_p_degree,
            "bounds": [
                dict(b.to_json_obj(), satisfied=sat.get(b.tag), sharp=sh.get(b.tag)) for b in self.applicable_bounds
            ],
            "notes": list(self.notes),
        }


def _indecomposability_status(P: Polynomial) -> tuple[str, str]:
    from .enumeration import is_indecomposable

    verdict, how = is_indecomposable(P)
    if verdict is True:
        return "proved", f"indecomposable ({how})"
    if verdict is False:
        return "withheld", f"decomposable ({how})"
    return "hint", how


def _top_monomial_in_three(p: Polynomial) -> bool:
    d = p.degree
    return any(sum(e) == d and sum(1 for k in e if k) <= 3 for e in p.terms)


def verify_bound(obj, homogeneous: bool = False) -> BoundReport:
    """Report every bound whose hypotheses the object meets, with status tags.

    ``obj`` is an affine polynomial, a projective polynomial (``homogeneous=True``,
    variables ``X0..Xn``) or a monomial map.
    """
    from .quadrics import MonomialMap, degree_report

    if isinstance(obj, MonomialMap):
        return degree_report(obj)
    if not isinstance(obj, Polynomial):
        raise PreconditionError(f"cannot classify {type(obj).__name__}")
    if homogeneous:
        return _verify_projective(obj)
    p = obj
    cls = class_membership(p)
    if not cls.in_I and not cls.in_H:
        raise PreconditionError("polynomial is not constant 1 on the hyperplane s = 1")
    n, d, N = p.nvars, p.degree, p.monomial_count
    if d < 1:
        raise PreconditionError("constant polynomial has no degree bound")
    P = homogenize_and_flip(p)
    rep = BoundReport(d, p_degree(P))
    if n < 2:
        rep.notes.append("n = 1: no bound exists")
        return rep
    if cls.in_H:
        # positive members are automatically indecomposable
        status, why = "proved", "positive coefficients"
    else:
        status, why = _indecomposability_status(P)
    rep.notes.append(why)
    add = rep.applicable_bounds.append
    if cls.in_H:
        if n == 2:
            add(Bound("T1.1i", formula("T1.1i", n, N)))
        add(Bound("T1.1ii", formula("T1.1ii", n, N)))
        if n == 3:
            add(Bound("T1.2ii", formula("T1.2ii", n, N)))
        if n >= 3 and _top_monomial_in_three(p):
            add(Bound("C7.4", formula("C7.4", n, N)))
    else:
        if n == 2:
            add(Bound("T1.2i", formula("T1.2i", n, N), status))
        if n == 3:
            from .diagram import diagram_of_polynomial, has_overhang

            K = diagram_of_polynomial(p).support
            if not has_overhang(K)[0]:
                add(Bound("T1.2iii", formula("T1.2iii", n, N), status))
        add(Bound("T1.2iv", formula("T1.2iv", n, N), status))
    NP = P.monomial_count
    if n >= 3 and _pure_monomials(P):
        add(Bound("T7.1", formula("T7.1", n, NP), status, "p-degree", "projective term count"))
    add(Bound("T7.2", formula("T7.2", n, NP), status, "p-degree", "projective term count"))
    return rep


def _verify_projective(P: Polynomial) -> BoundReport:
    if not P.is_homogeneous() or not is_multiple_of_s(P):
        raise PreconditionError("projective input must be a homogeneous multiple of S")
    n = P.nvars - 1
    if n < 2:
        raise PreconditionError("unbounded: for n = 1 no degree bound in terms of N exists")
    status, why = _indecomposability_status(P)
    rep = BoundReport(P.degree, p_degree(P), notes=[why])
    N = P.monomial_count
    if n == 2:
        rep.applicable_bounds.append(Bound("T2.2", formula("T2.2", n, N), status, "p-degree"))
    if n >= 3 and _pure_monomials(P):
        rep.applicable_bounds.append(Bound("T7.1", formula("T7.1", n, N), status, "p-degree"))
    rep.applicable_bounds.append(Bound("T7.2", formula("T7.2", n, N), status, "p-degree"))
    return rep


def _pure_monomials(P: Polynomial) -> list[int]:
    """Variables ``j`` such that ``P`` (after stripping common factors) contains ``X_j^d``."""
    P = strip_common_monomial(P)
    d = P.degree
    out = []
    for e in P.terms:
        nz = [i for i, k in enumerate(e) if k]
        if len(nz) == 1 and e[nz[0]] == d:
            out.append(nz[0])
    return sorted(out)


# -- pullback composition ------------------------------------------------------------------------------


@dataclass
class PullbackResult:
    composed: Polynomial
    D: int
    permutation: tuple
    witness: tuple
    c: int
    degree_lower_bound: int
    p_degree_input: int
    p_degree_composed: int
    N_input: int
    N_composed: int
    bound: Fraction

    def to_json_obj(self) -> dict:
        from .grammar import format_polynomial

        return {
            "composed": format_polynomial(self.composed, homogeneous=True),
            "D": self.D,
            "permutation": list(self.permutation),
            "witness": list(self.witness),
            "c": self.c,
            "degree_lower_bound": self.degree_lower_bound,
            "p_degree_input": self.p_degree_input,
            "p_degree_composed": self.p_degree_composed,
            "N_input": self.N_input,
            "N_composed": self.N_composed,
            "bound": str(self.bound),
        }


def sharp_map_components(D: int) -> tuple[list[Polynomial], list[int]]:
    """Monomials of the homogenized odd-degree sharp two-variable family and their signs.

    The monomials (in ``u, v, t``) are ``u^D, v^D, c_j u^(D-2j) v^j t^j, t^D``
    with positive ``c_j``.  With the returned signs their signed sum is a
    multiple of ``u + v + t``.
    """
    from .constructions import dkr_sharp_2d

    g = dkr_sharp_2d(D)
    mids = sorted((e for e in g.terms if e[0] and e[1]), key=lambda e: e[1])
    comps = [Polynomial(3, {(D, 0, 0): 1}), Polynomial(3, {(0, D, 0): 1})]
    signs = [1, 1]
    for e in mids:
        j = e[1]
        if e[0] != D - 2 * j:
            raise InternalContradiction(f"unexpected monomial {e} in the sharp family")
        comps.append(Polynomial(3, {(e[0], j, j): g.terms[e]}))
        signs.append((-1) ** j)
    comps.append(Polynomial(3, {(0, 0, D): 1}))
    signs.append(1)
    total = Polynomial.zero(3)
    for c, s in zip(comps, signs):
        total = total + c * s
    if not is_multiple_of_s(total):
        raise InternalContradiction("signed sharp components are not a multiple of u + v + t")
    return comps, signs


def pullback_compose(P: Polynomial, check_indecomposable: bool = True) -> PullbackResult:
    """Pull a projective multiple of ``S`` in ``n + 1 >= 4`` variables back to three variables.

    The variable carrying a pure power is moved last.  Variable ``X_k`` is then
    replaced by the signed ``k``-th component of the sharp degree ``D = 2n - 3``
    map.  Flipping the signs of ``P`` and of the map, as the hand argument does,
    amounts to the same substitution.
    """
    from .enumeration import is_indecomposable

    if not P.is_homogeneous() or not is_multiple_of_s(P):
        raise PreconditionError("input must be a homogeneous multiple of S")
    n = P.nvars - 1
    if n < 3:
        raise PreconditionError("pullback composition needs n >= 3")
    P0 = strip_common_monomial(P)
    d = P0.degree
    pures = _pure_monomials(P0)
    if not pures:
        raise PreconditionError("no pure monomial X_j^d present")
    if check_indecomposable:
        verdict, how = is_indecomposable(P0)
        if verdict is False:
            raise PreconditionError(f"input is decomposable ({how})")
    j = pures[-1]
    perm = tuple([i for i in range(n + 1) if i != j] + [j])
    Pp = P0.permute(perm)
    D = 2 * n - 3
    comps, signs = sharp_map_components(D)
    if len(comps) != n + 1:
        raise InternalContradiction("sharp map has the wrong number of components")
    images = [c * s for c, s in zip(comps, signs)]
    composed = Pp.compose(images)
    if not composed:
        raise InternalContradiction("composition vanished identically")
    if not is_multiple_of_s(composed):
        raise InternalContradiction("composition is not divisible by u + v + t")
    N_in, N_out = P0.monomial_count, composed.monomial_count
    if N_out > N_in:
        raise InternalContradiction(f"composition increased the term count ({N_in} -> {N_out})")
    # witness monomials avoid the last variable; the best one gives the strongest lower bound
    best = None
    for e, _ in Pp.sorted_terms():
        if e[n]:
            continue
        if sum(e) != d:
            raise InternalContradiction("accounting identity sum a_j = d failed")
        weight = sum((k - 1) * e[k] for k in range(2, n))
        c = d - D * d + weight
        if best is None or weight < best[1]:
            best = (e, weight, c)
    if best is None:
        raise InternalContradiction("every monomial contains the pure variable; p-degree normalization failed")
    e, weight, c = best
    lower = d * D - weight
    pd_out = p_degree(composed)
    if pd_out < lower:
        raise InternalContradiction(f"composed p-degree {pd_out} below the lower bound {lower}")
    if N_out >= 3 and pd_out > 2 * N_out - 5:
        raise InternalContradiction("two-variable bound fails on the composition")
    bound = formula("T7.1", n, N_in)
    if d > bound:
        raise InternalContradiction(f"p-degree {d} exceeds {bound}")
    return PullbackResult(composed, D, perm, e, c, lower, d, pd_out, N_in, N_out, bound)


# -- collapse to two variables ------------------------------------------------------------------------------


@dataclass
class CollapseResult:
    collapsed: Polynomial
    ordering: tuple
    x_prime: tuple
    a1: int
    p_degree_input: int
    p_degree_collapsed: int
    bound: Fraction

    def to_json_obj(self) -> dict:
        from .grammar import format_polynomial

        return {
            "collapsed": format_polynomial(self.collapsed, homogeneous=True),
            "ordering": list(self.ordering),
            "x_prime": [str(v) for v in self.x_prime],
            "a1": self.a1,
            "p_degree_input": self.p_degree_input,
            "p_degree_collapsed": self.p_degree_collapsed,
            "bound": str(self.bound),
        }


def x_prime_candidates(k: int, max_den: int = 97):
    """Deterministic rational points on ``y_1 + ... + y_k = 1`` with positive entries."""
    if k == 1:
        yield (Fraction(1),)
        return
    for q in range(k, max_den + 1):
        for comp in _positive_compositions(q, k):
            yield tuple(Fraction(a, q) for a in comp)


def _positive_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest


def collapse_to_two_vars(P: Polynomial, max_den: int = 97, check_indecomposable: bool = True) -> CollapseResult:
    """Collapse ``X_2..X_n`` onto one variable ``T`` at a non-cancelling rational point."""
    from .diagram import diagram_of, is_connected
    from .enumeration import is_indecomposable

    if not P.is_homogeneous() or not is_multiple_of_s(P):
        raise PreconditionError("input must be a homogeneous multiple of S")
    n = P.nvars - 1
    if n < 2:
        raise PreconditionError("collapse needs n >= 2")
    P0 = strip_common_monomial(P)
    d = P0.degree
    if check_indecomposable:
        verdict, how = is_indecomposable(P0)
        if verdict is False:
            raise PreconditionError(f"input is decomposable ({how})")
    # pick (first, second) maximizing the exponent of `second` among monomials free of `first`
    best = None
    for i, j in itertools.permutations(range(n + 1), 2):
        a1 = max((e[j] for e in P0.terms if e[i] == 0), default=-1)
        if best is None or a1 > best[0]:
            best = (a1, i, j)
    a1, i, j = best
    if a1 * (n - 1) < d:
        raise InternalContradiction("no ordering reaches a_1 >= d/(n-1)")
    ordering = (i, j) + tuple(k for k in range(n + 1) if k not in (i, j))
    Pp = P0.permute(ordering)
    Q = divide_by_s(Pp)
    groups: dict = {}
    for e, c in Q.terms.items():
        groups.setdefault(e[:2], []).append((e[2:], c))
    chosen = None
    for xp in x_prime_candidates(n - 1, max_den):
        if all(_eval_group(g, xp) != 0 for g in groups.values()):
            chosen = xp
            break
    if chosen is None:
        raise CapExceeded("no non-cancelling point found within the retry budget", max_den)
    T = Polynomial(3, {(0, 0, 1): 1})
    images = [Polynomial(3, {(1, 0, 0): 1}), Polynomial(3, {(0, 1, 0): 1})] + [T * v for v in chosen]
    collapsed = Pp.compose(images)
    if not is_multiple_of_s(collapsed):
        raise InternalContradiction("collapsed polynomial is not a multiple of X0 + X1 + T")
    if collapsed.monomial_count > P0.monomial_count:
        raise InternalContradiction("collapse increased the term count")
    pd = p_degree(collapsed)
    if pd * (n - 1) < d:
        raise InternalContradiction(f"collapsed p-degree {pd} below d/(n-1)")
    Qc = divide_by_s(strip_common_monomial(collapsed))
    if is_connected(diagram_of(Q, d).support) and not is_connected(
        diagram_of(Qc, strip_common_monomial(collapsed).degree).support
    ):
        raise InternalContradiction("collapse disconnected a connected support")
    NP = P0.monomial_count
    if collapsed.monomial_count >= 3 and pd > 2 * collapsed.monomial_count - 5:
        raise InternalContradiction("two-variable bound fails on the collapsed polynomial")
    bound = formula("T7.2", n, NP)
    if d > bound:
        raise InternalContradiction(f"p-degree {d} exceeds {bound}")
    return CollapseResult(collapsed, ordering, chosen, a1, d, pd, bound)


def _eval_group(items, xp) -> Fraction:
    total = Fraction(0)
    for e, c in items:
        term = Fraction(c)
        for v, k in zip(xp, e):
            term *= v**k
        total += term
    return total


# -- variable dependence ------------------------------------------------------------------------------------


@dataclass
class DependenceReport:
    counts: tuple
    degree: int
    corollary: Bound | None
    sharp: bool

    def to_json_obj(self) -> dict:
        return {
            "counts": list(self.counts),
            "degree": self.degree,
            "corollary": self.corollary.to_json_obj() if self.corollary else None,
            "sharp": self.sharp,
        }


def variable_dependence_check(p: Polynomial) -> DependenceReport:
    """Terms depending on each variable (at least ``d`` each) and the elimination corollary."""
    n = p.nvars
    if n < 3:
        raise PreconditionError("the per-variable count needs n >= 3; it fails for n = 2")
    cls = class_membership(p)
    if not cls.in_H:
        raise PreconditionError("polynomial must have nonnegative coefficients and equal 1 on s = 1")
    d = p.degree
    counts = tuple(sum(1 for e in p.terms if e[j]) for j in range(n))
    for j, c in enumerate(counts):
        if c < d:
            raise InternalContradiction(f"only {c} terms depend on x{j + 1}, fewer than d = {d}")
    cor = None
    sharp = False
    if _top_monomial_in_three(p):
        cor = Bound("C7.4", formula("C7.4", n, p.monomial_count))
        if d > cor.value:
            raise InternalContradiction(f"degree {d} exceeds {cor.value}")
        sharp = d == cor.value
    return DependenceReport(counts, d, cor, sharp)


# -- filled-diagram observation for n = 4 ------------------------------------------------------------------


@dataclass
class ObservationVerdict:
    n: int
    d: int
    face_min: Fraction
    face_count: int
    lower_bound: Fraction
    direct_min: int | None
    whitney_nodes: int
    target: int

    @property
    def certified(self) -> bool:
        ok = self.lower_bound > self.target
        if self.direct_min is not None:
            ok = ok and self.direct_min > self.target
        return ok and self.whitney_nodes == self.target

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "face_min": str(self.face_min),
            "face_count": self.face_count,
            "lower_bound": str(self.lower_bound),
            "direct_min": self.direct_min,
            "whitney_nodes": self.whitney_nodes,
            "target": self.target,
            "certified": self.certified,
        }


def face_weighted_min(d: int, cap: int = 22) -> Fraction:
    """Minimum over signs of (face nodes) + (edge nodes)/3 on a full triangular 2-face.

    A 2-face of the filled simplex in five homogeneous coordinates is a full
    2D diagram of degree ``d``; each edge is shared by three faces.
    """
    from .diagram import SiteSpec, compositions, minimize_signs, simplex_points, site_points

    pts = simplex_points(2, d)
    if len(pts) > cap:
        raise CapExceeded(f"face has {len(pts)} points, above the cap {cap}", 2 ** len(pts))
    index = {m: i for i, m in enumerate(pts)}
    sites = []
    for alpha in compositions(d, 3):
        zeros = alpha.count(0)
        w = {0: 3, 1: 1}.get(zeros, 0)
        if not w:
            continue
        members = tuple(index[m] for m in site_points(alpha) if m in index)
        sites.append(SiteSpec(members, w))
    best, _ = minimize_signs(pts, [sum(m) for m in pts], sites)
    return Fraction(best, 3)


def filled_observation_check(n: int, d: int, direct_cap: int = 24) -> ObservationVerdict:
    """Certify that the filled diagram in four variables has more than ``3d + 2`` nodes."""
    from .constructions import whitney
    from .diagram import diagram_of_polynomial, min_over_signs, node_count, simplex_points

    if n != 4:
        raise PreconditionError("the observation check is implemented for n = 4 only")
    if d < 2:
        raise PreconditionError("the observation needs d >= 2")
    fmin = face_weighted_min(d)
    faces = 10  # 2-faces of the simplex in five homogeneous coordinates
    vertices = 5
    lower = faces * fmin + vertices
    if fmin < Fraction(d - 1, 3):
        raise InternalContradiction(f"face minimum {fmin} below (d-1)/3")
    pts = simplex_points(n, d)
    direct = None
    if len(pts) <= direct_cap:
        direct, _ = min_over_signs(pts, d, "nodes", cap=direct_cap)
        if direct < lower:
            raise InternalContradiction("direct minimum is below the face lower bound")
    wn = node_count(diagram_of_polynomial(whitney(4, d)))
    target = d * (n - 1) + 2
    return ObservationVerdict(n, d, fmin, faces, lower, direct, wn, target)
