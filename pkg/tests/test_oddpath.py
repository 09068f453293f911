from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import forms, polys
from tauq.oddpath import PrEvElement, SuperFunc, ev_pullback, integrate, prev_diff, prev_integrate, prev_normalize, super_diff, super_mul
from tauq.symcore import Form, Poly, de_rham, wedge
from tauq.textfmt import parse_form, parse_poly

SETTINGS = settings(max_examples=40, deadline=None)


def F(text, n=2):
    return parse_form(text, n)


def sf(even, odd, n=2):
    return SuperFunc(F(even, n), F(odd, n))


def super_funcs(n):
    return st.integers(0, n).flatmap(
        lambda k: st.tuples(forms(n, k), forms(n, min(k + 1, n))).map(lambda t: SuperFunc(*t))
    )


def test_evaluation_of_coordinate():
    assert ev_pullback(parse_poly("x", 2)) == sf("x", "dx")


def test_evaluation_of_product():
    assert ev_pullback(parse_poly("x*y", 2)) == sf("x*y", "y dx + x dy")


def test_odd_products_vanish():
    a, b = sf("0", "dx"), sf("0", "dy")
    assert super_mul(a, b).is_zero()


def test_eps_moves_past_odd_forms_with_sign():
    # (1 eps) * dx = (-1)^1 dx eps
    assert super_mul(SuperFunc.eps(2), sf("dx", "0")) == sf("0", "-dx")


def test_differential_sends_eps_to_one():
    assert super_diff(SuperFunc.eps(2)) == sf("1", "0")
    assert super_diff(sf("0", "dx")) == sf("-dx", "0")


@SETTINGS
@given(polys(3))
def test_evaluation_is_a_cycle(f):
    assert super_diff(ev_pullback(f)).is_zero()


@SETTINGS
@given(polys(3), polys(3))
def test_evaluation_is_multiplicative(f, g):
    assert ev_pullback(f * g) == super_mul(ev_pullback(f), ev_pullback(g))


@SETTINGS
@given(super_funcs(3))
def test_super_differential_squares_to_zero(a):
    assert super_diff(super_diff(a)).is_zero()


@SETTINGS
@given(st.integers(0, 3), st.data())
def test_super_differential_is_a_derivation(k, data):
    a = data.draw(st.tuples(forms(3, k), forms(3, min(k + 1, 3))).map(lambda t: SuperFunc(*t)))
    b = data.draw(super_funcs(3))
    # a is homogeneous of total degree k
    a = a.part(k)
    lhs = super_diff(super_mul(a, b))
    rhs = super_mul(super_diff(a), b) + _scale(super_mul(a, super_diff(b)), (-1) ** k)
    assert lhs == rhs


def _scale(a, c):
    return SuperFunc(a.even.scale(c), a.odd.scale(c))


def test_integration_examples():
    assert integrate(SuperFunc.eps(2), F("x dy")) == F("x dy")
    assert integrate(sf("1", "0"), F("x dy")) == F("dx^dy")
    assert integrate(sf("y", "0"), F("x")) == F("y dx")


@SETTINGS
@given(polys(3), st.integers(0, 2).flatmap(lambda k: forms(3, k)))
def test_integration_of_evaluation_is_pullback_times_d(f, w):
    # integrating ev(f) (x) w recovers f dw + df ^ w = d(f w)
    w = w.part(max(w.degrees(), default=0)) if not w.is_zero() else w
    out = integrate(ev_pullback(f), w)
    assert out == de_rham(wedge(Form.function(f), w))


def test_normalize_moves_functions_out_of_eps_tensor():
    x = parse_poly("x", 2)
    m = prev_normalize([(SuperFunc.eps(2), [x, Poly.zero(2)])], 2, 2)
    assert m == PrEvElement.basis_eps(2, 2, 0, F("x"))


def test_normalize_expands_one_tensor():
    x = parse_poly("x", 2)
    m = prev_normalize([(sf("1", "0"), [x])], 2, 1)
    assert m == PrEvElement((F("x"),), (F("dx"),))


@SETTINGS
@given(super_funcs(2), polys(2), polys(2))
def test_normalize_commutes_with_differential(a, f, g):
    raw = [(a, [f, g])]
    lhs = prev_diff(prev_normalize(raw, 2, 2))
    rhs = prev_normalize([(super_diff(a), [f, g])], 2, 2)
    assert lhs == rhs


@SETTINGS
@given(st.lists(st.integers(0, 2).flatmap(lambda k: forms(3, k)), min_size=2, max_size=2), st.data())
def test_prev_integration_is_a_chain_map_up_to_sign(basis, data):
    basis = [b.part(max(b.degrees())) if not b.is_zero() else b for b in basis]
    m = PrEvElement(
        tuple(data.draw(forms(3, 1)) for _ in basis),
        tuple(data.draw(forms(3, 2)) for _ in basis),
    )
    # integration intertwines the differential with d on forms
    assert prev_integrate(prev_diff(m), basis) == de_rham(prev_integrate(m, basis))


def test_prev_diff_squares_to_zero():
    m = PrEvElement((F("x*y dx"), F("y")), (F("x dy"), F("x^2")))
    assert prev_diff(prev_diff(m)).is_zero()
