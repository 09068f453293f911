from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import forms, vector_fields
from tauq.symcore import Form, Poly
from tauq.textfmt import ParseError, format_form, format_vector_field, parse_form, parse_poly, parse_vector_field, render, var_names

SETTINGS = settings(max_examples=60, deadline=None)


def test_variable_names():
    assert var_names(2) == ["x", "y"]
    assert var_names(3) == ["x", "y", "z"]
    assert var_names(4) == ["x1", "x2", "x3", "x4"]


def test_parse_examples():
    f = parse_form("x^2*y dx^dy", 2)
    assert f.comps == {(0, 1): Poly(2, {(2, 1): 1})}
    g = parse_form("-3/2*x dz + 1", 3)
    assert g.comps[(2,)] == Poly(3, {(1, 0, 0): Fraction(-3, 2)})
    assert g.function_part() == Poly.const(3, 1)


def test_unsorted_wedge_literal_is_signed():
    assert parse_form("dy^dx", 2) == parse_form("-dx^dy", 2)
    assert parse_form("dx^dx", 2).is_zero()


def test_zero_literal():
    assert parse_form("0", 3).is_zero()
    assert format_form(Form.zero(3)) == "0"


def test_format_examples():
    assert format_form(parse_form("dx^dy - x*y dx + 2", 2)) == "2 - x*y dx + dx^dy"
    assert format_form(parse_form("x1 dx2^dx3^dx4", 4)) == "x1 dx2^dx3^dx4"


@pytest.mark.parametrize(
    "text, column",
    [("x +", 4), ("x ** y", 4), ("w dx", 1), ("dx^", 4), ("1/0", 3), ("x dy)", 5)],
)
def test_parse_errors_carry_column(text, column):
    with pytest.raises(ParseError) as info:
        parse_form(text, 2)
    assert info.value.column == column


def test_parse_poly_and_vector_field():
    assert parse_poly("x*y", 2) == Poly(2, {(1, 1): 1})
    v = parse_vector_field("(x, y^2)", 2)
    assert v.components == (Poly.var(2, 0), Poly(2, {(0, 2): 1}))
    with pytest.raises(ParseError):
        parse_vector_field("(x)", 2)
    with pytest.raises(ParseError):
        parse_vector_field("(dx, 1)", 2)


@SETTINGS
@given(st.integers(1, 4).flatmap(lambda n: st.integers(0, n).flatmap(lambda k: forms(n, k))))
def test_form_round_trip(f):
    assert parse_form(format_form(f), f.n) == f


@SETTINGS
@given(vector_fields(3))
def test_vector_field_round_trip(v):
    assert parse_vector_field(format_vector_field(v), 3) == v


def test_render_sequences():
    assert render([parse_form("dx", 2), 3]) == "[dx, 3]"
