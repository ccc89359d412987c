"""Sharp families, the undoing decomposition and the filled sharp search."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import poly
from newtondiag.constructions import (
    SharpFamilySpec,
    dkr_sharp_2d,
    faran3,
    faran_cubics,
    filledsharp_search,
    rebuild,
    sharp_extend,
    undoing_decomposition,
    whitney,
)
from newtondiag.diagram import diagram_of_polynomial, has_overhang, simplex_points, support_geometry
from newtondiag.errors import PreconditionError
from newtondiag.polynomial import Polynomial, class_membership


def in_H(p):
    return class_membership(p).in_H


def test_whitney_examples():
    assert whitney(3, 2) == poly("x1 + x2 + x1 x3 + x2 x3 + x3^2")
    assert whitney(3, 1) == poly("x1 + x2 + x3")
    assert whitney(4, 3).monomial_count == 10


@pytest.mark.parametrize("n,d", [(n, d) for n in range(2, 6) for d in range(1, 9)])
def test_whitney_counts(n, d):
    p = whitney(n, d)
    assert in_H(p)
    assert p.degree == d
    assert p.monomial_count == d * (n - 1) + 1


def test_whitney_diagram_is_path():
    for d in range(1, 7):
        D = diagram_of_polynomial(whitney(3, d))
        g = support_geometry(D.support)
        assert len(D.support) == d and g.size == d and g.connected
        assert not has_overhang(D.support)[0]


def test_faran_cubics():
    p2, p3 = faran_cubics()
    assert (p2.monomial_count, p2.degree) == (3, 3)
    assert p2.degree == 2 * p2.monomial_count - 3
    assert (p3.monomial_count, p3.degree) == (7, 3)
    assert p3.degree == Fraction(p3.monomial_count - 1, 2)
    assert diagram_of_polynomial(p3).support == set(simplex_points(3, 3))


def test_sharp_extend_examples():
    s = poly("x1 + x2 + x3")
    assert sharp_extend(s, (0, 0, 1), "s") == whitney(3, 2)
    q = sharp_extend(faran3(), (0, 0, 3), "s")
    assert in_H(q) and q.degree == 4 and q.monomial_count == 9
    r = sharp_extend(s, (0, 0, 1), "faran3")
    assert in_H(r) and r.degree == 4 and r.monomial_count == 9
    assert r.degree == Fraction(r.monomial_count - 1, 2)


def test_sharp_extend_requires_top_monomial():
    with pytest.raises(PreconditionError):
        sharp_extend(whitney(3, 2), (1, 0, 0), "s")


def test_dkr_examples():
    assert dkr_sharp_2d(3) == poly("x1^3 + 3 x1 x2 + x2^3")
    assert dkr_sharp_2d(1) == poly("x1 + x2")
    p5 = dkr_sharp_2d(5)
    assert p5 == poly("x1^5 + 5 x1^3 x2 + 5 x1 x2^2 + x2^5")
    assert p5.monomial_count == 4


@pytest.mark.parametrize("d", range(1, 18, 2))
def test_dkr_sharp(d):
    p = dkr_sharp_2d(d)
    assert in_H(p)
    N = p.monomial_count
    assert N == (d + 3) // 2
    assert d == 2 * N - 3


def test_dkr_even_rejected():
    with pytest.raises(PreconditionError):
        dkr_sharp_2d(4)


def test_undoing_examples():
    s2 = poly("x1 + x2") ** 2
    assert undoing_decomposition(s2) == {}
    assert rebuild(2, 2, {}) == s2
    p2 = faran_cubics()[0]
    assert undoing_decomposition(p2) == {(1, 1): 3}
    assert rebuild(2, 3, {(1, 1): 3}) == p2
    assert undoing_decomposition(whitney(3, 2)) == {(1, 0, 0): 1, (0, 1, 0): 1}
    assert rebuild(3, 2, {(1, 0, 0): 1, (0, 1, 0): 1}) == whitney(3, 2)


def _generated_family():
    out = []
    for n in (2, 3, 4):
        for d in range(1, 6):
            out.append(whitney(n, d))
    for d in range(1, 12, 2):
        out.append(dkr_sharp_2d(d))
    out.extend(faran3(p) for p in itertools.permutations(range(3)))
    out.append(faran_cubics()[0])
    return out


@pytest.mark.parametrize("p", _generated_family(), ids=lambda p: f"n{p.nvars}d{p.degree}N{p.monomial_count}")
def test_rebuild_inverts_undoing(p):
    assert rebuild(p.nvars, p.degree, undoing_decomposition(p)) == p


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=4),
    st.integers(0, 4),
)
def test_rebuild_inverts_undoing_random(choices, seed):
    """Random Whitney-style replacement sequences in three variables."""
    p = poly("x1 + x2 + x3")
    for k, g in choices:
        tops = sorted(e for e in p.terms if sum(e) == p.degree)
        m = tops[(k + seed) % len(tops)]
        p = sharp_extend(p, m, "s")
    assert rebuild(3, p.degree, undoing_decomposition(p)) == p


def test_search_examples():
    assert filledsharp_search(1).results == [poly("x1 + x2 + x3")]
    assert filledsharp_search(2).results == []
    got = filledsharp_search(3).results
    want = {faran3(p) for p in itertools.permutations(range(3))}
    assert set(got) == want and len(got) == len(want)


def test_search_flag_guard():
    with pytest.raises(PreconditionError):
        filledsharp_search(6)
    with pytest.raises(PreconditionError):
        filledsharp_search(8, long_running=True)


def _brute_force_filled_sharp(d):
    """All 2d+1 term supports with maximal diagrams and a positive solution.

    Constancy on s = 1 is imposed on a triangular grid of the plane, which
    determines a polynomial of degree <= d + 1 there.  Every candidate system
    must be uniquely solvable or inconsistent; an underdetermined one would
    hide solutions, so it fails the test.
    """
    from newtondiag.constructions import _solve_exact
    from newtondiag.diagram import compositions
    from newtondiag.polynomial import equals_one_on_hyperplane

    monos = [e for k in range(1, d + 1) for e in compositions(k, 3)]
    found = set()
    pures = [tuple(d * (i == j) for j in range(3)) for i in range(3)]
    rest = [e for e in monos if e not in pures]
    for extra in itertools.combinations(rest, 2 * d + 1 - 3):
        support = list(pures) + list(extra)
        rows, rhs = [], []
        pts = [(Fraction(a, d + 1), Fraction(b, d + 1)) for a in range(d + 2) for b in range(d + 2 - a)]
        for a, b in pts:
            x = (a, b, 1 - a - b)
            rows.append([Fraction(x[0]) ** e[0] * Fraction(x[1]) ** e[1] * Fraction(x[2]) ** e[2] for e in support])
            rhs.append(Fraction(1))
        status, sol = _solve_exact(rows, rhs)
        assert status != "degenerate", support
        if status != "unique":
            continue
        if any(c <= 0 for c in sol):
            continue
        p = Polynomial(3, dict(zip(support, sol)))
        if not equals_one_on_hyperplane(p):
            continue
        if diagram_of_polynomial(p).support == set(simplex_points(3, d)):
            found.add(p)
    return found


@pytest.mark.parametrize("d", [1, 2, 3])
def test_search_matches_brute_force(d):
    assert set(filledsharp_search(d).results) == _brute_force_filled_sharp(d)


def test_family_spec():
    assert SharpFamilySpec("whitney", n=3, d=2).generate() == whitney(3, 2)
    assert SharpFamilySpec("dkr2d", d=5).generate() == dkr_sharp_2d(5)
    assert SharpFamilySpec("faran3").generate() == faran3()
    with pytest.raises(PreconditionError):
        SharpFamilySpec("nope").generate()
