import pytest
from hypothesis import given, settings

from oracles import forms, vector_fields
from tauq.courant import (
    CourantElement,
    CourantError,
    CourantMorphism,
    associated_lie,
    canonical_connection,
    commutative,
    connection_difference,
    curvature,
    half_pairing_correction,
    identity_morphism,
    isotropic_from_splitting,
    quadratic,
    resplitting,
    splitting,
    standard,
    torsor_act,
    twisted,
    twisted_by,
    verify_axioms,
)
from tauq.sampling import derived_rng
from tauq.symcore import Poly, VectorField, de_rham, vf_bracket
from tauq.textfmt import parse_form, parse_vector_field

SETTINGS = settings(max_examples=30, deadline=None)


def F(text, n=2):
    return parse_form(text, n)


def vf_element(Q, v):
    return Q.from_vector_field(v)


def test_pairing_of_form_and_vector():
    Q = standard(2)
    a = Q.coanchor(F("dx"))
    b = vf_element(Q, VectorField.coord(2, 0))
    assert Q.pairing(a, b) == F("1")
    assert Q.pairing(b, a) == F("1")
    assert Q.pairing(a, a).is_zero()


def test_twisted_bracket_of_coordinate_fields():
    H = F("x dx^dy^dz", 3)
    Q = twisted_by(3, 1, H)
    dx, dy = (vf_element(Q, VectorField.coord(3, i)) for i in range(2))
    # i_{dy} i_{dx} H = x dz
    assert Q.dorfman(dx, dy) == CourantElement(F("x dz", 3), Q.F.zero())
    assert Q.dorfman(dy, dx) == CourantElement(F("-x dz", 3), Q.F.zero())


def test_standard_bracket_on_forms_and_fields():
    Q = standard(2)
    u, v = parse_vector_field("(0, 1)", 2), parse_vector_field("(x, 0)", 2)
    q1 = Q.element(F("x*y dx"), u.components)
    q2 = Q.element(F("y dy"), v.components)
    # L_{dy}(y dy) - i_{x dx} d(xy dx) = dy - i_{x dx}(-x dx^dy) = dy + x^2 dy
    out = Q.dorfman(q1, q2)
    assert out.form == F("dy + x^2 dy")
    assert out.sec == vf_bracket(u, v).components == (Poly.zero(2), Poly.zero(2))


@SETTINGS
@given(vector_fields(2), vector_fields(2))
def test_standard_bracket_restricts_to_vector_fields(u, v):
    Q = standard(2)
    out = Q.dorfman(vf_element(Q, u), vf_element(Q, v))
    assert out.form.is_zero()
    assert out.sec == vf_bracket(u, v).components


@SETTINGS
@given(forms(3, 2), forms(3, 2))
def test_higher_standard_pairing_is_symmetric(a, b):
    Q = standard(3, 2)
    u = VectorField([Poly.var(3, 1), Poly.const(3, 1), Poly.zero(3)], 3)
    q1 = Q.element(a, u.components)
    q2 = Q.element(b, VectorField.coord(3, 2).components)
    assert Q.pairing(q1, q2) == Q.pairing(q2, q1)


def test_structure_validation():
    with pytest.raises(CourantError):
        twisted_by(3, 1, F("y dx^dy", 3))
    with pytest.raises(CourantError):
        twisted(2, 1, F("dx"))
    with pytest.raises(CourantError):
        quadratic(gram=[[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    with pytest.raises(CourantError):
        standard(2, 0)


def test_non_closed_twist_is_rejected():
    with pytest.raises(CourantError):
        twisted_by(4, 1, F("x4 dx1^dx2^dx3", 4))


@pytest.mark.parametrize(
    "make",
    [lambda: standard(2), lambda: standard(3, 2), lambda: twisted(3, 1, F("x*y dx^dz + z dx^dy", 3)), lambda: quadratic(), lambda: commutative(2, 1)],
    ids=["standard", "standard-k2", "twisted", "quadratic", "commutative"],
)
def test_axioms_hold_on_families(make):
    results = verify_axioms(make(), seed=11, samples=6, max_degree=1)
    assert all(r.passed for r in results), [r.name for r in results if not r.passed]


def test_non_closed_twist_breaks_only_jacobi():
    Q = twisted_by(4, 1, F("x1 dx2^dx3^dx4", 4), check=False)
    failed = {r.name for r in verify_axioms(Q, seed=1, samples=10, max_degree=1) if not r.passed}
    assert failed == {"bracket-jacobi"}


def test_associated_lie_algebroid():
    assert associated_lie(standard(2)).anchors == (VectorField.coord(2, 0), VectorField.coord(2, 1))
    assert associated_lie(commutative(2, 1)).rank == 0
    assert associated_lie(quadratic()).rank == 3


# -- connections -----------------------------------------------------------------

def test_canonical_connection_is_isotropic_and_flat_when_untwisted():
    nabla = canonical_connection(standard(3))
    assert nabla.is_isotropic()
    assert curvature(nabla).is_zero()


def test_curvature_of_canonical_connection_is_twist():
    H = F("x dx^dy^dz", 3)
    assert curvature(canonical_connection(twisted_by(3, 1, H))) == H


@SETTINGS
@given(forms(3, 2, 1))
def test_torsor_action_shifts_curvature_by_d(omega):
    H = F("y dx^dy^dz", 3)
    nabla = canonical_connection(twisted_by(3, 1, H))
    moved = torsor_act(nabla, omega)
    assert moved.is_isotropic()
    assert curvature(moved) == H + de_rham(omega)
    assert connection_difference(moved, nabla) == omega


def test_torsor_action_rejects_wrong_degree():
    with pytest.raises(CourantError):
        torsor_act(canonical_connection(standard(2)), F("dx"))


def test_isotropic_correction():
    Q = standard(2)
    s = splitting(Q, [F("y dx + x dy"), F("dy")])
    assert not s.is_isotropic()
    fixed = isotropic_from_splitting(s)
    assert fixed.is_isotropic()
    phi = half_pairing_correction(s)
    expected = tuple(c + p for c, p in zip(s.columns, phi))
    assert fixed.columns == expected


def test_connections_need_exact_structure():
    with pytest.raises(CourantError):
        canonical_connection(commutative(2, 1))


# -- morphisms --------------------------------------------------------------------

def _all_hold(checks, seed=5, samples=6):
    for name, chk in checks.items():
        for i in range(samples):
            assert chk(derived_rng(seed, name, i)) is None, name


def test_identity_and_resplitting_are_morphisms():
    _all_hold(identity_morphism(twisted(2, 1, F("x*y dx^dy"))).checks(1))
    B = F("x*y dx^dz + y^2 dy^dz", 3)
    psi = resplitting(3, 1, B)
    assert psi.source.H == de_rham(B)
    assert psi.target.H.is_zero()
    _all_hold(psi.checks(1))


def test_morphism_must_respect_anchor():
    Q = standard(2)
    swapped = [Q.basis(1), Q.basis(0)]
    with pytest.raises(CourantError):
        CourantMorphism(Q, Q, swapped)
