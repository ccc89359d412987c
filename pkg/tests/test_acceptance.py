"""Acceptance criteria 1 to 10.

Each test prints exactly one line ``ACCEPTANCE <k> PASS|FAIL: <summary>``.
"""

import contextlib
import itertools
import random
from fractions import Fraction
from math import ceil

import pytest

from newtondiag.bounds import collapse_to_two_vars, filled_observation_check, formula, pullback_compose
from newtondiag.constructions import (
    dkr_sharp_2d,
    faran3,
    faran_cubics,
    filledsharp_search,
    sharp_extend,
    top_degree_monomials,
    whitney,
)
from newtondiag.diagram import (
    N,
    P,
    NewtonDiagram,
    diagram_of,
    diagram_of_polynomial,
    node_count,
    simplex_points,
    weighted_surface_count_2d,
)
from newtondiag.enumeration import exhaustive_bound_verify, min_nodes_over_signs
from newtondiag.polynomial import Polynomial, class_membership, divide_by_s, homogenize_and_flip, is_multiple_of_s, p_degree
from newtondiag.quadrics import (
    map_of_positive_polynomial,
    monomial_decomposability,
    polynomial_side_decomposable,
    positive_polynomial_of_sphere_map,
    real_polynomial_of_map,
    reducible_example,
)
from newtondiag.transforms import fill_level_2d, prescribed_minimal_2d, slice_column_2d, triangle_glue_2d


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(k, summary):
        info = {"detail": ""}
        try:
            yield info
        except BaseException:
            with capsys.disabled():
                print(f"\nACCEPTANCE {k} FAIL: {summary} {info['detail']}".rstrip())
            raise
        with capsys.disabled():
            print(f"\nACCEPTANCE {k} PASS: {summary} {info['detail']}".rstrip())

    return run


def test_criterion_01_planar_node_bound(criterion):
    with criterion(1, "2D sweep d <= 5, min #(D) = ceil((d+5)/2)") as info:
        certs = exhaustive_bound_verify("T3.4", 5)
        assert [c.d for c in certs] == [1, 2, 3, 4, 5]
        for c in certs:
            assert c.bound == ceil(Fraction(c.d + 5, 2))
            assert c.ok, c.violations[:3]
            assert c.attained
        info["detail"] = "(minima " + ",".join(str(c.min_nodes) for c in certs) + ")"


def test_criterion_02_spatial_node_bound(criterion):
    with criterion(2, "3D sweep d <= 3, min #(D) = 2d+2 on Whitney paths") as info:
        certs = exhaustive_bound_verify("T5.2", 3)
        for c in certs:
            assert c.bound == 2 * c.d + 2
            assert c.ok, c.violations[:3]
            assert c.attained
            K = diagram_of_polynomial(whitney(3, c.d)).support
            assert min_nodes_over_signs(K, c.d)[0] == 2 * c.d + 2
        info["detail"] = "(minima " + ",".join(str(c.min_nodes) for c in certs) + ")"


def test_criterion_03_sharp_families(criterion):
    with criterion(3, "dkr d <= 17, faran3, whitney n <= 5 d <= 8 exact equalities"):
        for d in range(1, 18, 2):
            p = dkr_sharp_2d(d)
            N_ = p.monomial_count
            assert class_membership(p).in_H
            assert N_ == Fraction(d + 3, 2) and d == 2 * N_ - 3
        q = faran3()
        assert class_membership(q).in_H
        assert q.monomial_count == 7 and q.degree == 3 == Fraction(7 - 1, 2)
        for n in range(2, 6):
            for d in range(1, 9):
                w = whitney(n, d)
                N_ = w.monomial_count
                assert class_membership(w).in_H
                assert N_ == d * (n - 1) + 1
                assert d == Fraction(N_ - 1, n - 1)


def test_criterion_04_cubic_quotient(criterion):
    with criterion(4, "faran2 -> divide by S -> cubic quotient signs, #=4, SC=2"):
        P_ = homogenize_and_flip(faran_cubics()[0])
        Q = divide_by_s(P_)
        D = diagram_of(Q, P_.degree)
        assert D.signs == {(0, 0): P, (2, 0): P, (0, 2): P, (1, 0): N, (0, 1): N, (1, 1): N}
        assert node_count(D) == 4
        assert weighted_surface_count_2d(D) == 2


def test_criterion_05_filled_sharp_search(criterion):
    with criterion(5, "filled sharp search d <= 5") as info:
        s = Polynomial.linear_sum(3)
        orbit = {faran3(p) for p in itertools.permutations(range(3))}
        sizes = []
        for d in range(1, 6):
            rep = filledsharp_search(d)
            got = rep.results
            assert rep.degenerate_systems == 0
            if d == 1:
                assert got == [s]
            elif d == 3:
                assert set(got) == orbit and len(got) == len(orbit)
            else:
                assert got == []
            sizes.append(len(got))
        info["detail"] = f"(result counts {sizes})"


def _random_fill(rng):
    d = rng.randint(2, 7)
    k = rng.randint(1, d - 1)
    signs = {m: rng.choice((P, N)) for m in simplex_points(2, k)}
    row = [(k - i, i) for i in range(k + 1)]
    signs[rng.choice(row)] = rng.choice((P, N))
    for m in simplex_points(2, d):
        if sum(m) >= k and rng.random() < 0.35:
            signs[m] = rng.choice((P, N))
    return NewtonDiagram(2, d, signs), k


def _random_slice(rng):
    d = rng.randint(2, 8)
    k = rng.randint(1, d - 1)
    signs = {m: rng.choice((P, N)) for m in simplex_points(2, k)}
    for m in simplex_points(2, d):
        if sum(m) >= k and m[0] >= 2 and rng.random() < 0.4:
            signs[m] = rng.choice((P, N))
    return NewtonDiagram(2, d, signs), k


def _random_glue(rng):
    k = rng.randint(1, 6)
    d = rng.randint(k + 1, k + 4)
    row = [(k - i, i) for i in range(k + 1)]
    signs = {rng.choice(row): rng.choice((P, N))}
    for m in simplex_points(2, d):
        if sum(m) >= k and rng.random() < 0.4:
            signs[m] = rng.choice((P, N))
    return NewtonDiagram(2, d, signs), k


def test_criterion_06_transform_receipts(criterion):
    with criterion(6, "1000 fills, slices, glues each; prescribed triangles d <= 12"):
        rng = random.Random(20261017)
        for _ in range(1000):
            D, k = _random_fill(rng)
            assert fill_level_2d(D, k, rng.choice(["nodes", "sc"])).satisfied
        for _ in range(1000):
            D, k = _random_slice(rng)
            r = slice_column_2d(D, k)
            assert r.satisfied and r.delta_actual <= Fraction(-1, 2)
        for _ in range(1000):
            D, k = _random_glue(rng)
            r = triangle_glue_2d(D, k)
            assert r.satisfied and r.delta_actual <= Fraction(k, 2)
        for d in range(1, 13):
            for _ in range(5):
                row = [rng.choice("PN") for _ in range(d)]
                assert weighted_surface_count_2d(prescribed_minimal_2d(row, d)) == Fraction(d + 1, 2)


def _random_whitney(rng, n, d):
    p = whitney(n, 1)
    choices = []
    for k in range(2, d + 1):
        m = rng.choice(top_degree_monomials(p))
        choices.append(m)
        p = whitney(n, k, choices)
    return p


def _pipeline_inputs():
    rng = random.Random(71)
    out = []
    for n, dmax in [(3, 5), (4, 4), (5, 3)]:
        for d in range(1, dmax + 1):
            out.append(whitney(n, d))
            for _ in range(2):
                out.append(_random_whitney(rng, n, d))
    s3 = whitney(3, 1)
    out.append(sharp_extend(s3, (0, 0, 1), "faran3"))
    out.append(sharp_extend(faran3(), (0, 0, 3), "s"))
    out.append(sharp_extend(faran3(), (3, 0, 0), (1, 0, 2)))
    out.append(sharp_extend(whitney(3, 2), (0, 0, 2), "faran3"))
    while len(out) < 50:
        p = faran3(rng.choice(list(itertools.permutations(range(3)))))
        for _ in range(rng.randint(1, 2)):
            p = sharp_extend(p, rng.choice(top_degree_monomials(p)), "s")
        out.append(p)
    return out[:50]


def test_criterion_07_pullback_and_collapse(criterion):
    with criterion(7, "50 pullback/collapse inputs, n in {3,4,5}") as info:
        inputs = _pipeline_inputs()
        assert len(inputs) == 50
        ns = set()
        for p in inputs:
            P_ = homogenize_and_flip(p)
            n = P_.nvars - 1
            ns.add(n)
            d = p_degree(P_)
            N_ = P_.monomial_count
            r = pullback_compose(P_)
            assert is_multiple_of_s(r.composed)
            assert r.N_composed <= r.N_input == N_
            b71 = Fraction(2 * n * (2 * N_ - 5), 3 * n * n - 3 * n - 2)
            assert formula("T7.1", n, N_) == b71
            assert d <= b71
            c = collapse_to_two_vars(P_)
            assert is_multiple_of_s(c.collapsed)
            b72 = Fraction((n - 1) * (2 * N_ - 5))
            assert c.bound == b72
            assert d <= b72
        assert ns == {3, 4, 5}
        info["detail"] = f"(n values {sorted(ns)})"


def _generated_positive_3(dmax=8):
    rng = random.Random(83)
    out = []
    for d in range(1, dmax + 1):
        out.append(whitney(3, d))
        for _ in range(3):
            out.append(_random_whitney(rng, 3, d))
    for perm in itertools.permutations(range(3)):
        out.append(faran3(perm))
    p = faran3()
    while p.degree + 1 <= dmax:
        p = sharp_extend(p, rng.choice(top_degree_monomials(p)), "s")
        out.append(p)
    p = whitney(3, 2)
    while p.degree + 3 <= dmax:
        p = sharp_extend(p, rng.choice(top_degree_monomials(p)), rng.choice(list(itertools.permutations(range(3)))))
        out.append(p)
    out.extend(filledsharp_search(d).results[0] for d in (1, 3))
    return out


def test_criterion_08_terms_per_variable(criterion):
    with criterion(8, "generated positive polynomials in 3 variables, d <= 8") as info:
        polys = _generated_positive_3()
        for p in polys:
            assert class_membership(p).in_H and p.degree <= 8
            for j in range(3):
                assert sum(1 for e in p.terms if e[j]) >= p.degree
        info["detail"] = f"({len(polys)} polynomials)"


def test_criterion_09_quadrics(criterion):
    from test_quadrics import _test_maps

    with criterion(9, "map round trips, oracle agreement <= 12 components, reducible map d <= 5") as info:
        fams = [whitney(n, d) for n in (2, 3, 4) for d in (1, 2, 3)] + [faran3()]
        fams += [dkr_sharp_2d(d) for d in (1, 3, 5, 7, 9)]
        for p in fams:
            f = map_of_positive_polynomial(p)
            assert positive_polynomial_of_sphere_map(f) == p
            P_ = real_polynomial_of_map(f)
            assert {e[:-1]: c for e, c in P_.terms.items() if c > 0} == dict(p.terms)
        maps = _test_maps()
        for f in maps:
            assert len(f.components) <= 12 and f.linearly_independent
            assert (monomial_decomposability(f).verdict == "decomposable") is polynomial_side_decomposable(f)
        for d in range(1, 6):
            assert monomial_decomposability(reducible_example(d)).verdict == "decomposable"
        info["detail"] = f"({len(maps)} maps compared)"


def test_criterion_10_observation(criterion):
    with criterion(10, "n = 4 filled diagrams exceed 3d+2, Whitney attains it, d in {2,3}") as info:
        parts = []
        for d in (2, 3):
            v = filled_observation_check(4, d)
            assert v.certified
            assert v.whitney_nodes == 3 * d + 2
            assert v.lower_bound > 3 * d + 2
            if v.direct_min is not None:
                assert v.direct_min > 3 * d + 2
            parts.append(f"d={d}: bound {v.lower_bound}, direct {v.direct_min}, whitney {v.whitney_nodes}")
        info["detail"] = "(" + "; ".join(parts) + ")"
