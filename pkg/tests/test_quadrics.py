"""Monomial hyperquadric maps and their real polynomials."""

import itertools
from fractions import Fraction

import pytest

from conftest import hpoly, poly
from newtondiag.constructions import dkr_sharp_2d, faran3, whitney
from newtondiag.errors import PreconditionError
from newtondiag.polynomial import Polynomial, p_degree
from newtondiag.quadrics import (
    HyperquadricSignature,
    MapComponent,
    MonomialMap,
    degree_report,
    identity_map,
    map_of_positive_polynomial,
    monomial_decomposability,
    polynomial_side_decomposable,
    positive_polynomial_of_sphere_map,
    real_polynomial_of_map,
    reducible_example,
    verify_quadric_map,
)


def test_real_polynomial_of_whitney_map():
    f = map_of_positive_polynomial(whitney(3, 2))
    P = real_polynomial_of_map(f)
    pos = Polynomial(4, {e: c for e, c in P.terms.items() if c > 0})
    # dehomogenize the positive part at the last coordinate
    assert Polynomial(3, {e[:-1]: c for e, c in pos.terms.items()}) == poly("x1 + x2 + x1 x3 + x2 x3 + x3^2")
    assert all(c.slot == 1 for c in f.components[:-1])


def test_identity_real_polynomial():
    sig = HyperquadricSignature(2, 1)
    P = real_polynomial_of_map(identity_map(sig))
    assert P == hpoly("X0 + X1 - X2 - X3")


def test_reducible_example_d2():
    P = real_polynomial_of_map(reducible_example(2))
    # the two z0 z2 components cancel
    assert P == hpoly("X2 X0 + X2 X1 + X0^2 + X0 X1 - X2^2 - X0 X2")


def test_map_of_whitney():
    f = map_of_positive_polynomial(whitney(3, 2))
    assert f.source == HyperquadricSignature(3, 0)
    assert len(f.components) - 1 == 5
    assert f.target == HyperquadricSignature(5, 0)


def test_map_of_s():
    f = map_of_positive_polynomial(poly("x1 + x2 + x3"))
    assert sum(1 for c in f.components if c.slot > 0) == 3
    assert f.degree == 1


def test_map_of_faran3():
    f = map_of_positive_polynomial(faran3())
    N = sum(1 for c in f.components if c.slot > 0)
    assert N == 7 and f.degree == 3 == Fraction(N - 1, 2)
    rep = degree_report(f)
    assert rep.bound("T1.3ii").value == 3
    assert rep.sharp["T1.3ii"]


def test_map_of_dkr5():
    rep = degree_report(map_of_positive_polynomial(dkr_sharp_2d(5)))
    assert rep.bound("T1.3i").value == 5
    assert rep.sharp["T1.3i"]


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_reducible_example_is_map(d):
    assert verify_quadric_map(reducible_example(d))


def test_identity_is_map():
    assert verify_quadric_map(identity_map(HyperquadricSignature(3, 0)))


def test_perturbed_map_fails():
    f = map_of_positive_polynomial(whitney(3, 2))
    comps = list(f.components)
    comps[0] = MapComponent(comps[0].coef_sq + 1, comps[0].exponent, comps[0].slot)
    g = MonomialMap(f.source, f.target, tuple(comps))
    assert not verify_quadric_map(g)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_reducible_decomposable_map_side(d):
    dec = monomial_decomposability(reducible_example(d))
    assert dec.verdict == "decomposable"
    assert sorted(map(sorted, dec.groups)) == [[0, 1, 4], [2, 3, 5]]


def test_reducible_bounds_withheld():
    rep = degree_report(reducible_example(3))
    assert rep.applicable_bounds
    assert all(b.status == "withheld" for b in rep.applicable_bounds)


def test_whitney_and_identity_indecomposable():
    assert monomial_decomposability(map_of_positive_polynomial(whitney(3, 2))).verdict == "indecomposable"
    assert monomial_decomposability(identity_map(HyperquadricSignature(2, 1))).verdict == "indecomposable"


def _positive_families():
    out = [whitney(n, d) for n in (2, 3) for d in (1, 2, 3)]
    out += [faran3(), dkr_sharp_2d(3), dkr_sharp_2d(5), dkr_sharp_2d(7)]
    return out


@pytest.mark.parametrize("p", _positive_families(), ids=lambda p: f"n{p.nvars}d{p.degree}N{p.monomial_count}")
def test_positive_round_trip(p):
    f = map_of_positive_polynomial(p)
    assert positive_polynomial_of_sphere_map(f) == p
    P = real_polynomial_of_map(f)
    # squared magnitudes come back exactly
    assert {e[:-1]: c for e, c in P.terms.items() if c > 0} == dict(p.terms)


def _shift(f, extra):
    """Multiply every component of ``f`` by the monomial ``extra``."""
    comps = tuple(
        MapComponent(c.coef_sq, tuple(a + b for a, b in zip(c.exponent, extra)), c.slot) for c in f.components
    )
    pos = sum(1 for c in comps if c.slot > 0)
    return comps, pos


def _direct_sum(f, g, a, b):
    """``a`` raises every exponent of ``x0`` in ``f`` to 2 or more, ``b`` keeps ``g`` at 1 or less."""
    c1, p1 = _shift(f, a)
    c2, p2 = _shift(g, b)
    comps = c1 + c2
    assert not {c.exponent for c in c1} & {c.exponent for c in c2}
    neg = len(comps) - p1 - p2
    return MonomialMap(f.source, HyperquadricSignature(p1 + p2, neg - 1), comps)


def _direct_sums():
    s3 = map_of_positive_polynomial(poly("x1 + x2 + x3"))
    w = map_of_positive_polynomial(whitney(3, 2))
    s2 = map_of_positive_polynomial(poly("x1 + x2"))
    f2 = map_of_positive_polynomial(dkr_sharp_2d(3))
    return [
        _direct_sum(s3, s3, (2, 0, 0, 0), (0, 1, 1, 0)),
        _direct_sum(w, s3, (2, 0, 0, 0), (0, 1, 1, 1)),
        _direct_sum(f2, s2, (2, 0, 0), (0, 2, 2)),
    ]


def _test_maps():
    """Maps with independent components and at most 12 of them."""
    maps = [map_of_positive_polynomial(p) for p in _positive_families()]
    maps += [reducible_example(d) for d in (1, 3, 4, 5)]
    maps += [identity_map(HyperquadricSignature(a, b)) for a, b in [(1, 0), (2, 0), (2, 1), (3, 0)]]
    maps += _direct_sums()
    return [f for f in maps if f.linearly_independent and len(f.components) <= 12]


@pytest.mark.parametrize("f", _test_maps(), ids=lambda f: f"{f.source}->{f.target}d{f.degree}")
def test_map_and_polynomial_oracles_agree(f):
    assert verify_quadric_map(f)
    map_side = monomial_decomposability(f).verdict == "decomposable"
    assert polynomial_side_decomposable(f) is map_side


def test_direct_sums_are_decomposable():
    for f in _direct_sums():
        assert f.linearly_independent
        assert monomial_decomposability(f).verdict == "decomposable"


def test_p_degree_matches_map_degree_without_repeats():
    """Independent components with no common monomial factor keep the degree."""
    checked = 0
    for f in _test_maps():
        shared = any(all(c.exponent[i] for c in f.components) for i in range(f.source.nvars))
        if not shared:
            assert p_degree(real_polynomial_of_map(f)) == f.degree
            checked += 1
    assert checked >= 10


def test_repeated_exponent_changes_p_degree():
    """z0^2 appears in both slots and cancels, leaving x1 (x0 - x1)."""
    src = HyperquadricSignature(1, 0)
    comps = (
        MapComponent(1, (1, 1), 1),
        MapComponent(1, (2, 0), 1),
        MapComponent(1, (2, 0), -1),
        MapComponent(1, (0, 2), -1),
    )
    f = MonomialMap(src, HyperquadricSignature(2, 1), comps)
    assert not f.linearly_independent
    assert verify_quadric_map(f)
    assert f.degree == 2
    assert p_degree(real_polynomial_of_map(f)) == 1


def test_signature_guards():
    with pytest.raises(PreconditionError):
        HyperquadricSignature(0, 1)
    with pytest.raises(PreconditionError):
        MonomialMap(HyperquadricSignature(1, 0), HyperquadricSignature(1, 0), (MapComponent(1, (1, 0), 1),))


def test_json_round_trip():
    f = reducible_example(3)
    assert MonomialMap.from_json_obj(f.to_json_obj()) == f
