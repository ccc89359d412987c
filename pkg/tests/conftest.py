"""Shared strategies and small helpers for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from newtondiag.diagram import NewtonDiagram, compositions, simplex_points
from newtondiag.grammar import parse_polynomial
from newtondiag.polynomial import Polynomial


def poly(text, nvars=None):
    return parse_polynomial(text, nvars=nvars)


def hpoly(text, nvars=None):
    return parse_polynomial(text, nvars=nvars, homogeneous=True)


coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=12).filter(lambda c: c != 0)


@st.composite
def polynomials(draw, nvars=None, max_degree=4, max_terms=6, homogeneous_degree=None):
    n = draw(st.integers(1, 4)) if nvars is None else nvars
    if homogeneous_degree is not None:
        exps = st.sampled_from(list(compositions(homogeneous_degree, n)))
    else:
        exps = st.lists(st.integers(0, max_degree), min_size=n, max_size=n)
    terms = draw(st.dictionaries(exps.map(tuple), coefficients, max_size=max_terms))
    return Polynomial(n, terms)


@st.composite
def diagrams_2d(draw, d_min=1, d_max=5):
    d = draw(st.integers(d_min, d_max))
    pts = simplex_points(2, d)
    signs = draw(st.dictionaries(st.sampled_from(pts), st.sampled_from([1, -1]), max_size=len(pts)))
    return NewtonDiagram(2, d, signs)


def frac(x):
    return Fraction(x)
