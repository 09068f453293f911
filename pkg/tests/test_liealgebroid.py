import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import forms, polys
from tauq import graded as G
from tauq.liealgebroid import (
    EPS,
    ONE,
    SO3_CONSTANTS,
    SO3_KILLING,
    AtiyahAction,
    AtiyahOperator,
    SharpAlgebroid,
    atiyah_bracket,
    check_marked,
    d_tilde,
    d_tilde_direct,
    iota_tilde,
    killing_form,
    lie_algebra,
    marked_sharp,
    sample_sharp,
    sharp_anchor,
    so3_action_algebroid,
    tangent_sharp,
)
from tauq.oddpath import PrEvElement
from tauq.symcore import Form, Poly, VectorField, vf_bracket
from tauq.textfmt import parse_form, parse_vector_field

SETTINGS = settings(max_examples=25, deadline=None)


def F(text, n=2):
    return parse_form(text, n)


def one(n, k):
    return Form.const(n, k)


def sections(n, r):
    return st.lists(polys(n, 1), min_size=r, max_size=r).map(tuple)


# -- plain Lie algebroids ------------------------------------------------------

def test_so3_killing_form():
    K = killing_form(lie_algebra(SO3_CONSTANTS))
    assert [[p.constant_term() for p in row] for row in K] == SO3_KILLING


def test_so3_action_anchor_is_rotation():
    A = so3_action_algebroid()
    assert A.anchor(A.basis(2)) == parse_vector_field("(y, -x, 0)", 3)


@SETTINGS
@given(sections(3, 3), sections(3, 3))
def test_anchor_preserves_brackets(u, v):
    A = so3_action_algebroid()
    assert A.anchor(A.bracket(u, v)) == vf_bracket(A.anchor(u), A.anchor(v))


@SETTINGS
@given(sections(3, 3), sections(3, 3), polys(3, 1))
def test_bracket_leibniz_rule(u, v, f):
    A = so3_action_algebroid()
    lhs = A.bracket(u, tuple(c * f for c in v))
    rhs = tuple(a * f + b * A.anchor(u)(f) for a, b in zip(A.bracket(u, v), v))
    assert lhs == rhs


# -- transgressed algebroids ------------------------------------------------------

def test_tangent_sharp_actions():
    T = tangent_sharp(2)
    dx = (Poly.const(2, 1), Poly.zero(2))
    assert T.act(T.one(one(2, 1), dx), F("x dy")) == F("dy")
    assert T.act(T.eps(one(2, 1), dx), F("dx^dy")) == F("dy")


def test_sharp_bracket_of_degree_zero_generators():
    S = SharpAlgebroid(so3_action_algebroid())
    e = S.basis
    assert S.bracket(S.one(one(3, 1), e[0]), S.one(one(3, 1), e[1])) == {(ONE, e[2]): one(3, 1)}
    assert S.bracket(S.eps(one(3, 1), e[0]), S.one(one(3, 1), e[1])) == {(EPS, e[2]): one(3, 1)}
    assert S.bracket(S.eps(one(3, 1), e[0]), S.eps(one(3, 1), e[1])) == {}


def test_differential_sends_eps_to_one():
    S = SharpAlgebroid(so3_action_algebroid())
    b = S.basis[1]
    assert S.diff(S.eps(one(3, 1), b)) == {(ONE, b): one(3, 1)}
    assert S.diff(S.one(one(3, 1), b)) == {}


def test_reduction_moves_functions_through_evaluation():
    T = tangent_sharp(2)
    x = Poly.var(2, 0)
    raw = T.one(one(2, 1), (x, Poly.zero(2)))
    b = T.basis[0]
    assert T.reduce(raw) == {(ONE, b): F("x"), (EPS, b): F("dx")}


@pytest.mark.parametrize("seed", range(8))
def test_sharp_jacobi_and_anchor_on_samples(seed):
    S = SharpAlgebroid(so3_action_algebroid())
    T = tangent_sharp(3)
    rng = random.Random(seed)
    a, b, c = (sample_sharp(S, rng, 1) for _ in range(3))
    da, db = S.degree(a), S.degree(b)
    lhs = S.bracket(a, S.bracket(b, c))
    rhs = G.add(S.bracket(S.bracket(a, b), c), G.scale(S.bracket(b, S.bracket(a, c)), G.sign(da * db)))
    assert G.is_zero(G.sub(lhs, rhs))
    lhs = sharp_anchor(S, T, S.bracket(a, b))
    rhs = T.bracket(sharp_anchor(S, T, a), sharp_anchor(S, T, b))
    assert G.is_zero(G.sub(lhs, rhs))


# -- Atiyah operators on pr*ev*E ------------------------------------------------

def zero_matrix(n, r):
    return tuple(tuple(Poly.zero(n) for _ in range(r)) for _ in range(r))


def test_d_tilde_of_pure_derivation():
    D = AtiyahOperator(VectorField.coord(2, 0), zero_matrix(2, 1))
    m = PrEvElement((F("x"),), (Form.zero(2),))
    assert iota_tilde(D, m).is_zero()
    assert d_tilde(D, m) == PrEvElement((F("1"),), (Form.zero(2),))


def test_d_tilde_of_identity_endomorphism_is_identity():
    I = tuple(tuple(Poly.const(2, int(i == j)) for j in range(2)) for i in range(2))
    D = AtiyahOperator(VectorField.zero(2), I)
    m = PrEvElement((F("x*y dx + 1"), F("dy")), (F("x"), F("y dx^dy")))
    assert d_tilde(D, m) == m


def operators(n, r):
    mats = st.lists(st.lists(polys(n, 1), min_size=r, max_size=r).map(tuple), min_size=r, max_size=r).map(tuple)
    vfs = st.lists(polys(n, 1), min_size=n, max_size=n).map(lambda cs: VectorField(cs, n))
    return st.builds(AtiyahOperator, vfs, mats)


def prev_elements(n, r):
    comp = st.integers(0, n).flatmap(lambda k: forms(n, k, 1))
    return st.tuples(st.lists(comp, min_size=r, max_size=r), st.lists(comp, min_size=r, max_size=r)).map(
        lambda t: PrEvElement(tuple(t[0]), tuple(t[1]))
    )


@SETTINGS
@given(operators(2, 2), prev_elements(2, 2))
def test_d_tilde_matches_direct_formula(D, m):
    assert d_tilde(D, m) == d_tilde_direct(D, m)


@SETTINGS
@given(operators(2, 2), operators(2, 2), prev_elements(2, 2))
def test_d_tilde_is_a_representation(D1, D2, m):
    lhs = d_tilde(atiyah_bracket(D1, D2), m)
    rhs = d_tilde(D1, d_tilde(D2, m)) - d_tilde(D2, d_tilde(D1, m))
    assert lhs == rhs


@SETTINGS
@given(operators(2, 1), prev_elements(2, 1))
def test_iota_tilde_squares_to_zero(D, m):
    assert iota_tilde(D, iota_tilde(D, m)).is_zero()


def test_atiyah_action_on_basis_brackets():
    act = AtiyahAction(2, 1)
    S = act.sharp
    m = PrEvElement((F("x*y + dx"),), (F("y"),))
    for a in S.basis:
        for b in S.basis:
            ea, eb = S.one(one(2, 1), a), S.eps(one(2, 1), b)
            lhs = act.apply(S.bracket(ea, eb), m)
            rhs = act.apply(ea, act.apply(eb, m)) - act.apply(eb, act.apply(ea, m))
            assert lhs == rhs


# -- markings ----------------------------------------------------------------------

def test_zero_marking_passes_checks():
    S = SharpAlgebroid(so3_action_algebroid())
    results = check_marked(marked_sharp(S, {}, 1, 1), seed=3, samples=5, max_degree=1)
    assert all(r.passed for r in results)


def test_noncentral_marking_fails_checks():
    T = tangent_sharp(2)
    c = T.one(one(2, 1), T.basis[0])
    results = {r.name: r.passed for r in check_marked(marked_sharp(T, c, 3, 1), seed=3, samples=10, max_degree=1)}
    assert not results["marking-degree"]
    assert not results["anchor-kills-marking"]
    assert not all(results.values())
