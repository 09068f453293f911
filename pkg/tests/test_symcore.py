from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import components, d_oracle, forms, interior_oracle, poly_expr, polys, vector_fields, wedge_oracle
from tauq.symcore import ChartMismatch, Form, Poly, VectorField, de_rham, interior, lie_derivative, merge_sign, vf_bracket, wedge
from tauq.textfmt import parse_form, parse_poly, parse_vector_field

SETTINGS = settings(max_examples=40, deadline=None)


def F(text, n=2):
    return parse_form(text, n)


def V(text, n=2):
    return parse_vector_field(text, n)


# -- scalars and polynomials -----------------------------------------------

def test_fractions_are_reduced_and_integral_values_collapse():
    p = Poly.const(1, Fraction(4, 2))
    assert p.constant_term() == 2 and isinstance(p.constant_term(), int)
    q = Poly.const(1, Fraction(2, 4))
    assert q.constant_term() == Fraction(1, 2)


def test_zero_coefficients_are_not_stored():
    x = Poly.var(2, 0)
    assert (x - x).terms == {}
    assert not (x - x)


def test_chart_mismatch_is_rejected():
    with pytest.raises(ChartMismatch):
        Poly.var(2, 0) + Poly.var(3, 0)
    with pytest.raises(ChartMismatch):
        wedge(Form.dx(2, 0), Form.dx(3, 0))


@SETTINGS
@given(polys(3), polys(3))
def test_poly_product_matches_sympy(p, q):
    assert poly_expr(p * q) == (poly_expr(p) * poly_expr(q)).expand()


@SETTINGS
@given(polys(3), st.integers(0, 2))
def test_poly_derivative_matches_sympy(p, i):
    import sympy as sp

    from oracles import xs

    assert poly_expr(p.diff(i)) == sp.diff(poly_expr(p), xs(3)[i])


def test_merge_sign_counts_inversions():
    assert merge_sign((0,), (1,)) == 1
    assert merge_sign((1,), (0,)) == -1
    assert merge_sign((0, 2), (1,)) == -1
    assert merge_sign((1, 2), (0,)) == 1


# -- wedge ----------------------------------------------------------------------

def test_wedge_of_coordinate_one_forms():
    assert wedge(F("dx"), F("dy")) == F("dx^dy")
    assert wedge(F("dy"), F("dx")) == F("-dx^dy")


def test_wedge_unit():
    w = F("x*y dx + y^2 dy")
    assert wedge(Form.const(2, 1), w) == w


def test_wedge_of_scaled_one_forms():
    assert wedge(F("x dy"), F("y dx")) == F("-x*y dx^dy")


def test_form_basis_rejects_unsorted_index():
    with pytest.raises(ValueError):
        Form(2, {(1, 0): Poly.const(2, 1)})


@SETTINGS
@given(st.integers(0, 3).flatmap(lambda i: forms(3, i)), st.integers(0, 3).flatmap(lambda j: forms(3, j)))
def test_wedge_matches_determinant_oracle(a, b):
    assert components(wedge(a, b)) == wedge_oracle(a, b)


@SETTINGS
@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_wedge_graded_commutative(i, j, data):
    a, b = data.draw(forms(3, i)), data.draw(forms(3, j))
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (i * j))


# -- d ----------------------------------------------------------------------------

def test_d_of_coordinate():
    assert de_rham(F("x")) == F("dx")


def test_d_of_x_dy():
    assert de_rham(F("x dy")) == F("dx^dy")


def test_d_coordinate_expansion():
    # coefficient of dx^dy is d_x(x^2) - d_y(xy) = 2x - x = x
    assert de_rham(F("x*y dx + x^2 dy")) == F("x dx^dy")


@SETTINGS
@given(st.integers(0, 3).flatmap(lambda i: forms(3, i)))
def test_d_matches_coordinate_oracle(a):
    assert components(de_rham(a)) == d_oracle(a)


@SETTINGS
@given(st.integers(0, 3).flatmap(lambda i: forms(3, i)))
def test_d_squares_to_zero(a):
    assert de_rham(de_rham(a)).is_zero()


@SETTINGS
@given(st.integers(0, 3), st.data())
def test_d_is_a_graded_derivation(i, data):
    a = data.draw(forms(3, i))
    b = data.draw(st.integers(0, 3).flatmap(lambda j: forms(3, j)))
    assert de_rham(wedge(a, b)) == wedge(de_rham(a), b) + wedge(a, de_rham(b)).scale((-1) ** i)


# -- interior, Lie derivative, bracket ---------------------------------------------

def test_contraction_of_basis_form():
    assert interior(V("(1, 0)"), F("dx^dy")) == F("dy")


def test_contraction_of_function_vanishes():
    assert interior(V("(1, 0)"), F("x^2*y")).is_zero()


def test_contraction_with_signed_expansion():
    assert interior(V("(0, x)"), F("dx^dy")) == F("-x dx")


@SETTINGS
@given(vector_fields(3), st.integers(1, 3), st.data())
def test_contraction_matches_evaluation_oracle(xi, k, data):
    a = data.draw(forms(3, k))
    assert components(interior(xi, a)) == interior_oracle(xi, a, k)


def test_lie_derivative_examples():
    assert lie_derivative(V("(1, 0)"), F("x dy")) == F("dy")
    assert lie_derivative(V("(x*y, y^2)"), F("1")).is_zero()
    assert lie_derivative(V("(x, 0)"), F("dx")) == F("dx")


@SETTINGS
@given(vector_fields(3), polys(3), st.integers(0, 3).flatmap(lambda i: forms(3, i)))
def test_lie_derivative_of_function_multiple(xi, f, a):
    lhs = lie_derivative(xi.scale(f), a)
    rhs = lie_derivative(xi, a).scale(f) + wedge(de_rham(Form.function(f)), interior(xi, a))
    assert lhs == rhs


@SETTINGS
@given(vector_fields(3), vector_fields(3), st.integers(0, 3).flatmap(lambda i: forms(3, i)))
def test_contraction_of_bracket_is_commutator(xi, eta, a):
    rhs = lie_derivative(xi, interior(eta, a)) - interior(eta, lie_derivative(xi, a))
    assert interior(vf_bracket(xi, eta), a) == rhs


def test_vector_field_brackets():
    dx, dy = V("(1, 0)"), V("(0, 1)")
    assert vf_bracket(dx, dy).is_zero()
    assert vf_bracket(V("(0, x)"), dx) == V("(0, -1)")
    xi = V("(x*y, y^2 + 1)")
    assert vf_bracket(xi, xi).is_zero()


@SETTINGS
@given(vector_fields(2), vector_fields(2), vector_fields(2))
def test_vector_field_jacobi(a, b, c):
    total = vf_bracket(a, vf_bracket(b, c)) + vf_bracket(b, vf_bracket(c, a)) + vf_bracket(c, vf_bracket(a, b))
    assert total.is_zero()


def test_vector_field_length_is_checked():
    with pytest.raises(ValueError):
        VectorField([Poly.const(2, 1)], 2)


def test_parse_poly_rejects_differentials():
    from tauq.textfmt import ParseError

    with pytest.raises(ParseError):
        parse_poly("x dy", 2)
