"""Monomial CR maps of hyperquadrics and their real-polynomial counterparts.

Homogeneous conventions: ``Q(a, b)`` sits in projective space of dimension
``a + b`` with coordinates ``z_0 .. z_{a+b}``.  The first ``a`` coordinates are
positive in the defining form and the remaining ``b + 1`` are negative.  Target
slots follow the same rule: ``c`` positive and ``d + 1`` negative components.
Complex coefficients enter only through their squared moduli, so everything
stays rational.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .polynomial import Polynomial, class_membership, is_multiple_of_s, p_degree


@dataclass(frozen=True)
class HyperquadricSignature:
    positive: int
    negative: int

    def __post_init__(self):
        if self.positive < 1 or self.negative < 0:
            raise PreconditionError(f"invalid signature Q({self.positive},{self.negative})")

    @property
    def nvars(self) -> int:
        return self.positive + self.negative + 1

    @property
    def dimension(self) -> int:
        return self.positive + self.negative

    @property
    def is_sphere(self) -> bool:
        return self.negative == 0

    def signs(self) -> tuple[int, ...]:
        return (1,) * self.positive + (-1,) * (self.negative + 1)

    def __str__(self) -> str:
        return f"Q({self.positive},{self.negative})"


@dataclass(frozen=True)
class MapComponent:
    coef_sq: Fraction
    exponent: tuple
    slot: int  # +1 positive, -1 negative

    def __post_init__(self):
        object.__setattr__(self, "coef_sq", Fraction(self.coef_sq))
        object.__setattr__(self, "exponent", tuple(self.exponent))
        if self.coef_sq <= 0:
            raise PreconditionError("squared coefficient modulus must be positive")
        if self.slot not in (1, -1):
            raise PreconditionError("slot must be +1 or -1")


@dataclass(frozen=True)
class MonomialMap:
    source: HyperquadricSignature
    target: HyperquadricSignature
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise PreconditionError("map has no components")
        nv = self.source.nvars
        degs = {sum(c.exponent) for c in self.components}
        if any(len(c.exponent) != nv for c in self.components):
            raise PreconditionError(f"component exponents must have {nv} entries for source {self.source}")
        if len(degs) != 1:
            raise PreconditionError("components are not homogeneous of one degree")
        pos = sum(1 for c in self.components if c.slot > 0)
        neg = len(self.components) - pos
        if (pos, neg) != (self.target.positive, self.target.negative + 1):
            raise PreconditionError(
                f"target {self.target} needs {self.target.positive} positive and "
                f"{self.target.negative + 1} negative components, got {pos} and {neg}"
            )

    @property
    def degree(self) -> int:
        return sum(self.components[0].exponent)

    @property
    def linearly_independent(self) -> bool:
        exps = [c.exponent for c in self.components]
        return len(set(exps)) == len(exps)

    def to_json_obj(self) -> dict:
        return {
            "source": [self.source.positive, self.source.negative],
            "target": [self.target.positive, self.target.negative],
            "components": [
                {"exponent": list(c.exponent), "coef_sq": str(c.coef_sq), "slot": c.slot} for c in self.components
            ],
        }

    @classmethod
    def from_json_obj(cls, obj) -> MonomialMap:
        return cls(
            HyperquadricSignature(*obj["source"]),
            HyperquadricSignature(*obj["target"]),
            tuple(MapComponent(Fraction(c["coef_sq"]), tuple(c["exponent"]), int(c["slot"])) for c in obj["components"]),
        )


def _signed_poly(nv: int, comps: Sequence[MapComponent]) -> Polynomial:
    out: dict = {}
    for c in comps:
        out[c.exponent] = out.get(c.exponent, 0) + c.slot * c.coef_sq
    return Polynomial(nv, out)


def real_polynomial_of_map(f: MonomialMap) -> Polynomial:
    """``sum slot * |C|^2 x^alpha`` over the components, in ``x_0 .. x_n``."""
    return _signed_poly(f.source.nvars, f.components)


def _flip(P: Polynomial, signs: Sequence[int]) -> Polynomial:
    """``P(signs * x)``: turns the signed source form into the plain sum of variables."""
    out = {}
    for e, c in P.terms.items():
        s = 1
        for k, sg in zip(e, signs):
            if sg < 0 and k % 2:
                s = -s
        out[e] = c * s
    return Polynomial(P.nvars, out)


def _divisible_by_source(P: Polynomial, source: HyperquadricSignature) -> bool:
    if not P:
        return True
    if not P.is_homogeneous():
        return False
    return is_multiple_of_s(_flip(P, source.signs()))


def verify_quadric_map(f: MonomialMap) -> bool:
    """Whether the real polynomial of ``f`` vanishes wherever the source form does."""
    return _divisible_by_source(real_polynomial_of_map(f), f.source)


def map_of_positive_polynomial(p: Polynomial) -> MonomialMap:
    """Sphere map whose real polynomial is the homogenization of ``p - 1``.

    The homogenizing coordinate is the last one and carries the single negative
    slot.
    """
    if any(c < 0 for c in p.terms.values()):
        raise PreconditionError("negative coefficient present")
    cls = class_membership(p)
    if not cls.in_H:
        raise PreconditionError("polynomial is not 1 on s = 1")
    n, d = p.nvars, p.degree
    comps = [MapComponent(c, tuple(e) + (d - sum(e),), 1) for e, c in p.sorted_terms()]
    comps.append(MapComponent(1, (0,) * n + (d,), -1))
    return MonomialMap(HyperquadricSignature(n, 0), HyperquadricSignature(len(comps) - 1, 0), tuple(comps))


def positive_polynomial_of_sphere_map(f: MonomialMap) -> Polynomial:
    """Inverse of :func:`map_of_positive_polynomial`: dehomogenize the positive slots."""
    if not (f.source.is_sphere and f.target.is_sphere):
        raise PreconditionError("needs a sphere-to-sphere map")
    out = {}
    for c in f.components:
        if c.slot > 0:
            e = c.exponent[:-1]
            out[e] = out.get(e, 0) + c.coef_sq
    return Polynomial(f.source.nvars - 1, out)


@dataclass
class MapDecomposition:
    verdict: str  # indecomposable, decomposable, indeterminate
    groups: list

    def to_json_obj(self) -> dict:
        return {"verdict": self.verdict, "groups": [list(g) for g in self.groups]}


def monomial_decomposability(f: MonomialMap, cap: int = 20) -> MapDecomposition:
    """Search for a split of the components into two quadric maps of the same source.

    Each group must have a nonzero real polynomial divisible by the source
    form; its target signature is whatever its slots make it.  Above ``cap``
    components the answer is only given when the polynomial side finds a split.
    """
    if not verify_quadric_map(f):
        raise PreconditionError("not a CR map of the stated hyperquadrics")
    k = len(f.components)
    nv = f.source.nvars
    if k > cap:
        from .enumeration import decomposability_oracle

        if f.linearly_independent:
            res = decomposability_oracle(real_polynomial_of_map(f), f.source.signs())
            if res.decomposable:
                first = set(res.parts[0].terms)
                g1 = tuple(i for i, c in enumerate(f.components) if c.exponent in first)
                return MapDecomposition("decomposable", [g1, tuple(i for i in range(k) if i not in g1)])
        return MapDecomposition("indeterminate", [])
    # fix component 0 in the first group so each split is seen once
    for r in range(0, k - 1):
        for rest in itertools.combinations(range(1, k), r):
            g1 = (0,) + rest
            g2 = tuple(i for i in range(k) if i not in g1)
            p1 = _signed_poly(nv, [f.components[i] for i in g1])
            p2 = _signed_poly(nv, [f.components[i] for i in g2])
            if not p1 or not p2:
                continue
            if _divisible_by_source(p1, f.source) and _divisible_by_source(p2, f.source):
                return MapDecomposition("decomposable", [g1, g2])
    return MapDecomposition("indecomposable", [])


def polynomial_side_decomposable(f: MonomialMap) -> bool | None:
    """Decomposability of the real polynomial, via the exact subset oracle."""
    from .enumeration import decomposability_oracle

    res = decomposability_oracle(real_polynomial_of_map(f), f.source.signs())
    if res.verdict == "indeterminate":
        return None
    return res.decomposable


def degree_report(f: MonomialMap):
    """Bounds that apply to ``f``, with hypothesis flags folded into the status tags."""
    from .bounds import Bound, BoundReport, formula

    if not verify_quadric_map(f):
        raise PreconditionError("not a CR map of the stated hyperquadrics")
    P = real_polynomial_of_map(f)
    N = f.target.dimension
    n = f.source.dimension
    independent = f.linearly_independent
    dec = monomial_decomposability(f)
    rep = BoundReport(f.degree, p_degree(P) if P else None)
    rep.notes.append(f"linearly independent components: {independent}")
    rep.notes.append(f"monomial decomposability: {dec.verdict}")
    if dec.verdict == "decomposable":
        status = "withheld"
    elif dec.verdict == "indeterminate" or not independent:
        status = "conditional"
    else:
        status = "proved"
    add = rep.applicable_bounds.append
    if n == 2:
        add(Bound("T1.3i", formula("T1.3i", n, N), status))
    if n == 3 and f.source.is_sphere and f.target.is_sphere:
        # sphere maps are indecomposable automatically
        add(Bound("T1.3ii", formula("T1.3ii", n, N), "proved" if independent else "conditional"))
    if n >= 2:
        NP = P.monomial_count if P else 0
        add(
            Bound(
                "T1.3iii",
                formula("T1.3iii", n, NP),
                status,
                "p-degree",
                "value of C(n, N) derived from the general projective bound; far from optimal",
            )
        )
    return rep


def reducible_example(d: int) -> MonomialMap:
    """The arbitrary-degree map from the 3-sphere to ``Q(4, 1)``, a direct sum of two linear maps."""
    if d < 1:
        raise PreconditionError("d must be positive")
    pos = [(1, 0, d - 1), (0, 1, d - 1), (d, 0, 0), (d - 1, 1, 0)]
    neg = [(0, 0, d), (d - 1, 0, 1)]
    comps = [MapComponent(1, e, 1) for e in pos] + [MapComponent(1, e, -1) for e in neg]
    return MonomialMap(HyperquadricSignature(2, 0), HyperquadricSignature(4, 1), tuple(comps))


def identity_map(sig: HyperquadricSignature) -> MonomialMap:
    nv = sig.nvars
    signs = sig.signs()
    comps = [MapComponent(1, tuple(int(i == j) for j in range(nv)), signs[i]) for i in range(nv)]
    return MonomialMap(sig, sig, tuple(comps))
