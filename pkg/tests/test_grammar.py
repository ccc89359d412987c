"""Text formats for polynomials and monomial maps."""

import pytest
from hypothesis import given, settings, strategies as st

from conftest import polynomials
from newtondiag.constructions import faran_cubics
from newtondiag.grammar import GrammarError, format_map, format_polynomial, parse_map, parse_polynomial
from newtondiag.polynomial import S_form
from newtondiag.quadrics import reducible_example


def test_parse_faran2():
    assert parse_polynomial("x1^3 + 3 x1 x2 + x2^3") == faran_cubics()[0]


def test_parse_homogeneous_sum():
    assert parse_polynomial("X0 + X1 + X2") == S_form(2)


def test_syntax_error_offset():
    with pytest.raises(GrammarError) as exc:
        parse_polynomial("x1 + + x2")
    assert exc.value.offset == 5


@pytest.mark.parametrize("text", ["x1 +", "x1^", "(x1 + x2", "x1 ** x2", "x1 + X0"])
def test_malformed_inputs_raise(text):
    with pytest.raises(GrammarError):
        parse_polynomial(text)


def test_grammar_error_is_value_error():
    assert issubclass(GrammarError, ValueError)


@settings(max_examples=500, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: polynomials(nvars=n, max_degree=4, max_terms=6)), st.booleans())
def test_parse_print_round_trip(p, homogeneous):
    text = format_polynomial(p, homogeneous=homogeneous)
    assert parse_polynomial(text, nvars=p.nvars, homogeneous=homogeneous) == p


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_map_round_trip(d):
    f = reducible_example(d)
    assert parse_map(format_map(f)) == f


def test_map_bad_header():
    with pytest.raises(GrammarError):
        parse_map("mapping [ z0 : +1 ]")


def test_map_unknown_variable():
    with pytest.raises(GrammarError):
        parse_map("map source=Q(1,0) target=Q(1,0) [ z0 : +1 ; z5 : -1 ]")
