"""Suite registry and the batch ``run`` driver.

Each suite is a function of a ``Context`` returning property results.  Every
property draws its inputs from ``derived_rng(seed, suite, name, i)``, so a
report depends only on the configuration.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Dict, List, Optional

from . import graded as G
from .courant import (
    AXIOMS,
    COMMUTATIVE,
    QUADRATIC,
    STANDARD,
    TWISTED,
    CourantError,
    CourantMorphism,
    CourantStructure,
    associated_lie,
    axiom_checks,
    canonical_connection,
    connection_difference,
    curvature,
    half_pairing_correction,
    identity_morphism,
    isotropic_from_splitting,
    resplitting,
    splitting,
    standard,
    twisted_by,
    verify_axioms,
)
from .liealgebroid import (
    EPS,
    ONE,
    AtiyahAction,
    AtiyahOperator,
    SharpAlgebroid,
    atiyah_bracket,
    check_marked,
    d_tilde,
    d_tilde_direct,
    iota_tilde,
    marked_sharp,
    sample_sharp,
    sharp_anchor,
    so3_action_algebroid,
    tangent_sharp,
    vector_field_section,
)
from .oddpath import PrEvElement, SuperFunc, ev_pullback, integrate, prev_diff, prev_normalize, super_diff, super_mul
from .report import PropertyResult, SuiteResult, VerificationReport, mismatch, run_property
from .sampling import derived_rng, pick, sample_form, sample_matrix, sample_poly, sample_section, sample_vector_field
from .symcore import Form, Poly, VectorField, de_rham, interior, lie_derivative, vf_bracket, wedge
from .textfmt import format_forms, parse_form, render
from .transgression import (
    CTL_STATEMENTS,
    EXTENSION_STATEMENTS,
    K_GENERATORS,
    MARK,
    SHAPES,
    TauAlgebroid,
    ctl_pullback,
    extension_checks,
    initial_ctl,
    k_generator,
    marked,
    marking_map_is_iso,
    model_comparison,
    quadratic_ctl,
    quadratic_model,
    round_trip_checks,
    round_trip_on_basis,
    sample_degree,
    sample_tau,
    sample_term,
    tau_build,
)


def _sign(k: int) -> int:
    return -1 if k & 1 else 1


class SuiteNotApplicable(ValueError):
    """The suite does not apply to the configured family."""


@dataclass
class Context:
    seed: int
    samples: int
    max_degree: int
    chart_dim: int
    atiyah_rank: int
    Q: CourantStructure
    suite: str = ""

    def prop(self, name: str, statement: str, check: Callable, samples: Optional[int] = None) -> PropertyResult:
        return run_property(self.seed, self.suite, name, statement, self.samples if samples is None else samples, check)

    def once(self, name: str, statement: str, check: Callable[[], Optional[Dict[str, str]]]) -> PropertyResult:
        """A deterministic property, evaluated a single time."""
        return run_property(self.seed, self.suite, name, statement, 1, lambda rng: check())

    @cached_property
    def tau(self) -> TauAlgebroid:
        return tau_build(self.Q)


# -- Cartan calculus --------------------------------------------------------

def lie_derivative_coordinates(xi: VectorField, a: Form) -> Form:
    """``L_xi`` from its coordinate formula: xi on coefficients, ``dx_i -> d xi_i`` on the basis."""
    n = a.n
    dxi = [de_rham(Form.function(c)) for c in xi.components]
    out = Form.zero(n)
    for idx, p in a.comps.items():
        out = out + Form.basis(n, idx).scale(xi(p))
        for pos, i in enumerate(idx):
            if not dxi[i]:
                continue
            term = Form.const(n, 1)
            for q, j in enumerate(idx):
                term = wedge(term, dxi[i] if q == pos else Form.dx(n, j))
            out = out + term.scale(p)
    return out


def suite_cartan(ctx: Context) -> List[PropertyResult]:
    n, md = ctx.chart_dim, ctx.max_degree

    def deg(rng):
        return rng.randint(0, n)

    def form(rng):
        return sample_form(n, deg(rng), rng, md)

    def vf(rng):
        return sample_vector_field(n, rng, md)

    def d_squared(rng):
        a = form(rng)
        return mismatch(de_rham(de_rham(a)), Form.zero(n), render, a=a)

    def d_leibniz(rng):
        i = deg(rng)
        a, b = sample_form(n, i, rng, md), form(rng)
        rhs = wedge(de_rham(a), b) + wedge(a, de_rham(b)).scale(_sign(i))
        return mismatch(de_rham(wedge(a, b)), rhs, render, a=a, b=b)

    def graded_comm(rng):
        i, j = deg(rng), deg(rng)
        a, b = sample_form(n, i, rng, md), sample_form(n, j, rng, md)
        return mismatch(wedge(a, b), wedge(b, a).scale(_sign(i * j)), render, a=a, b=b)

    def cartan_formula(rng):
        xi, a = vf(rng), form(rng)
        lhs = de_rham(interior(xi, a)) + interior(xi, de_rham(a))
        return mismatch(lhs, lie_derivative_coordinates(xi, a), render, xi=xi, a=a)

    def lie_commutes_d(rng):
        xi, a = vf(rng), form(rng)
        return mismatch(lie_derivative(xi, de_rham(a)), de_rham(lie_derivative(xi, a)), render, xi=xi, a=a)

    def lie_function_multiple(rng):
        xi, a = vf(rng), form(rng)
        f = sample_poly(n, rng, md)
        lhs = lie_derivative(xi.scale(f), a)
        rhs = lie_derivative(xi, a).scale(f) + wedge(de_rham(Form.function(f)), interior(xi, a))
        return mismatch(lhs, rhs, render, xi=xi, f=f, a=a)

    def iota_bracket(rng):
        xi, eta, a = vf(rng), vf(rng), form(rng)
        rhs = lie_derivative(xi, interior(eta, a)) - interior(eta, lie_derivative(xi, a))
        return mismatch(interior(vf_bracket(xi, eta), a), rhs, render, xi=xi, eta=eta, a=a)

    def lie_bracket(rng):
        xi, eta, a = vf(rng), vf(rng), form(rng)
        rhs = lie_derivative(xi, lie_derivative(eta, a)) - lie_derivative(eta, lie_derivative(xi, a))
        return mismatch(lie_derivative(vf_bracket(xi, eta), a), rhs, render, xi=xi, eta=eta, a=a)

    def iota_anticommute(rng):
        xi, eta, a = vf(rng), vf(rng), form(rng)
        lhs = interior(xi, interior(eta, a)) + interior(eta, interior(xi, a))
        return mismatch(lhs, Form.zero(n), render, xi=xi, eta=eta, a=a)

    def iota_derivation(rng):
        xi = vf(rng)
        i = deg(rng)
        a, b = sample_form(n, i, rng, md), form(rng)
        rhs = wedge(interior(xi, a), b) + wedge(a, interior(xi, b)).scale(_sign(i))
        return mismatch(interior(xi, wedge(a, b)), rhs, render, xi=xi, a=a, b=b)

    def vf_on_functions(rng):
        xi, eta = vf(rng), vf(rng)
        f = sample_poly(n, rng, md)
        return mismatch(vf_bracket(xi, eta)(f), xi(eta(f)) - eta(xi(f)), render, xi=xi, eta=eta, f=f)

    return [
        ctx.prop("d-squared", "d d a = 0", d_squared),
        ctx.prop("d-leibniz", "d(a^b) = da^b + (-1)^|a| a^db", d_leibniz),
        ctx.prop("wedge-graded-commutative", "a^b = (-1)^(|a||b|) b^a", graded_comm),
        ctx.prop("cartan-formula", "d i_xi a + i_xi d a = L_xi a (coordinate formula)", cartan_formula),
        ctx.prop("lie-commutes-d", "L_xi d = d L_xi", lie_commutes_d),
        ctx.prop("lie-function-multiple", "L_(f xi) a = f L_xi a + df ^ i_xi a", lie_function_multiple),
        ctx.prop("iota-of-bracket", "i_[xi,eta] = [L_xi, i_eta]", iota_bracket),
        ctx.prop("lie-of-bracket", "L_[xi,eta] = [L_xi, L_eta]", lie_bracket),
        ctx.prop("iota-anticommute", "i_xi i_eta + i_eta i_xi = 0", iota_anticommute),
        ctx.prop("iota-derivation", "i_xi(a^b) = i_xi a ^ b + (-1)^|a| a ^ i_xi b", iota_derivation),
        ctx.prop("vector-field-bracket", "[xi,eta](f) = xi(eta f) - eta(xi f)", vf_on_functions),
    ]


# -- odd path space ---------------------------------------------------------

def _super(n: int, j: int, rng, md: int) -> SuperFunc:
    return SuperFunc(sample_form(n, j, rng, md), sample_form(n, j + 1, rng, md))


def _prev(n: int, r: int, j: int, rng, md: int) -> PrEvElement:
    return PrEvElement(
        tuple(sample_form(n, j, rng, md) for _ in range(r)),
        tuple(sample_form(n, j + 1, rng, md) for _ in range(r)),
    )


def _sscale(a: SuperFunc, c) -> SuperFunc:
    return SuperFunc(a.even.scale(c), a.odd.scale(c))


def _prev_as_raw(m: PrEvElement, n: int):
    """The normal form read back as tensors ``(one + odd eps) (x) e_i``."""
    r = m.rank
    unit = [tuple(Poly.const(n, 1 if j == i else 0) for j in range(r)) for i in range(r)]
    return [(SuperFunc(m.one[i], m.eps[i]), unit[i]) for i in range(r)]


def suite_oddpath(ctx: Context) -> List[PropertyResult]:
    n, md, r = ctx.chart_dim, ctx.max_degree, ctx.atiyah_rank

    def deg(rng):
        return rng.randint(-1, n)

    def sf(rng):
        return _super(n, deg(rng), rng, md)

    def ev_mult(rng):
        f, g = sample_poly(n, rng, md), sample_poly(n, rng, md)
        return mismatch(ev_pullback(f * g), super_mul(ev_pullback(f), ev_pullback(g)), str, f=f, g=g)

    def ev_cycle(rng):
        f = sample_poly(n, rng, md)
        return mismatch(super_diff(ev_pullback(f)), SuperFunc.from_form(Form.zero(n)), str, f=f)

    def diff_squared(rng):
        a = sf(rng)
        return mismatch(super_diff(super_diff(a)), SuperFunc.from_form(Form.zero(n)), str, a=str(a))

    def leibniz(rng):
        i = deg(rng)
        a, b = _super(n, i, rng, md), sf(rng)
        rhs = super_mul(super_diff(a), b) + _sscale(super_mul(a, super_diff(b)), _sign(i))
        return mismatch(super_diff(super_mul(a, b)), rhs, str, a=str(a), b=str(b))

    def assoc(rng):
        a, b, c = sf(rng), sf(rng), sf(rng)
        return mismatch(super_mul(super_mul(a, b), c), super_mul(a, super_mul(b, c)), str, a=str(a), b=str(b), c=str(c))

    def graded_comm(rng):
        i, j = deg(rng), deg(rng)
        a, b = _super(n, i, rng, md), _super(n, j, rng, md)
        return mismatch(super_mul(a, b), _sscale(super_mul(b, a), _sign(i * j)), str, a=str(a), b=str(b))

    def integrate_ev(rng):
        f = sample_poly(n, rng, md)
        w = sample_form(n, rng.randint(0, n), rng, md)
        return mismatch(integrate(ev_pullback(f), w), de_rham(w.scale(f)), render, f=f, omega=w)

    def integrate_basics(rng):
        w = sample_form(n, rng.randint(0, n), rng, md)
        got = (integrate(SuperFunc.eps(n), w), integrate(SuperFunc.from_form(Form.const(n, 1)), w))
        return mismatch(got, (w, de_rham(w)), lambda p: f"{render(p[0])}; {render(p[1])}", omega=w)

    def integrate_balanced(rng):
        a = sf(rng)
        f = sample_poly(n, rng, md)
        w = sample_form(n, rng.randint(0, n), rng, md)
        lhs = integrate(super_mul(a, ev_pullback(f)), w)
        return mismatch(lhs, integrate(a, w.scale(f)), render, a=str(a), f=f, omega=w)

    def raw(rng):
        return [(sf(rng), sample_section(n, r, rng, md)) for _ in range(rng.randint(1, 3))]

    def normalize_idempotent(rng):
        m = prev_normalize(raw(rng), n, r)
        return mismatch(prev_normalize(_prev_as_raw(m, n), n, r), m, str)

    def normalize_additive(rng):
        x, y = raw(rng), raw(rng)
        lhs = prev_normalize(x + y, n, r)
        return mismatch(lhs, prev_normalize(x, n, r) + prev_normalize(y, n, r), str)

    def normalize_diff(rng):
        x = raw(rng)
        lhs = prev_diff(prev_normalize(x, n, r))
        rhs = prev_normalize([(super_diff(a), s) for a, s in x], n, r)
        return mismatch(lhs, rhs, str)

    def prev_diff_squared(rng):
        m = _prev(n, r, deg(rng), rng, md)
        return mismatch(prev_diff(prev_diff(m)), PrEvElement.zero(n, r), str)

    return [
        ctx.prop("ev-multiplicative", "ev(fg) = ev(f) ev(g)", ev_mult),
        ctx.prop("ev-cycle", "d ev(f) = 0", ev_cycle),
        ctx.prop("diff-squared", "d d A = 0 on O[eps]", diff_squared),
        ctx.prop("diff-leibniz", "d(AB) = dA B + (-1)^|A| A dB", leibniz),
        ctx.prop("product-associative", "(AB)C = A(BC)", assoc),
        ctx.prop("product-graded-commutative", "AB = (-1)^(|A||B|) BA", graded_comm),
        ctx.prop("integrate-ev", "int ev(f) (x) w = d(f w)", integrate_ev),
        ctx.prop("integrate-basics", "int eps (x) w = w and int 1 (x) w = d w", integrate_basics),
        ctx.prop("integrate-balanced", "int A ev(f) (x) w = int A (x) f w", integrate_balanced),
        ctx.prop("normalize-idempotent", "normal forms are fixed by normalization", normalize_idempotent),
        ctx.prop("normalize-additive", "normalization is additive", normalize_additive),
        ctx.prop("normalize-diff", "normalization commutes with d", normalize_diff),
        ctx.prop("module-diff-squared", "d d = 0 on pr*ev*E", prev_diff_squared),
    ]


# -- transgressed Lie algebroids --------------------------------------------

def sharp_for(ctx: Context) -> SharpAlgebroid:
    Q = ctx.Q
    if Q.n == 0:
        return SharpAlgebroid(so3_action_algebroid())
    return SharpAlgebroid(associated_lie(Q))


def suite_sharp(ctx: Context) -> List[PropertyResult]:
    S = sharp_for(ctx)
    n, md = S.n, ctx.max_degree
    T = tangent_sharp(n)
    one = Form.const(n, 1)

    def sec(rng):
        return sample_section(n, S.rank, rng, md)

    def form(rng):
        return sample_form(n, rng.randint(0, n), rng, md)

    def br(a, b):
        return S.reduce(S.bracket_raw(a, b))

    def el(tag, psi, u):
        return {(tag, tuple(u)): psi} if psi else {}

    def setup(rng):
        f = sample_poly(n, rng, md)
        return f, form(rng), form(rng), sec(rng), sec(rng)

    def fmt_inputs(f, w1, w2, a1, a2):
        return {"f": render(f), "w1": render(w1), "w2": render(w2), "a1": render(list(a1)), "a2": render(list(a2))}

    def scaled(u, f):
        return tuple(x * f for x in u)

    def wd_one_one(rng):
        f, w1, w2, a1, a2 = setup(rng)
        df = de_rham(Form.function(f))
        lhs = br(el(ONE, w1, scaled(a1, f)), el(ONE, w2, a2))
        rhs = G.add(br(el(ONE, w1.scale(f), a1), el(ONE, w2, a2)), br(el(EPS, wedge(w1, df), a1), el(ONE, w2, a2)))
        return mismatch(lhs, rhs, S.format, **fmt_inputs(f, w1, w2, a1, a2))

    def wd_one_eps(rng):
        f, w1, w2, a1, a2 = setup(rng)
        df = de_rham(Form.function(f))
        lhs = br(el(ONE, w1, scaled(a1, f)), el(EPS, w2, a2))
        rhs = G.add(br(el(ONE, w1.scale(f), a1), el(EPS, w2, a2)), br(el(EPS, wedge(w1, df), a1), el(EPS, w2, a2)))
        return mismatch(lhs, rhs, S.format, **fmt_inputs(f, w1, w2, a1, a2))

    def wd_eps_eps(rng):
        f, w1, w2, a1, a2 = setup(rng)
        lhs = br(el(EPS, w1.scale(f), a1), el(EPS, w2, a2))
        rhs = br(el(EPS, w1, scaled(a1, f)), el(EPS, w2, a2))
        return mismatch(lhs, rhs, S.format, **fmt_inputs(f, w1, w2, a1, a2))

    def wd_eps_one(rng):
        f, w1, w2, a1, a2 = setup(rng)
        lhs = br(el(EPS, w1.scale(f), a1), el(ONE, w2, a2))
        rhs = br(el(EPS, w1, scaled(a1, f)), el(ONE, w2, a2))
        return mismatch(lhs, rhs, S.format, **fmt_inputs(f, w1, w2, a1, a2))

    def anchor_eps(rng):
        f, w, u = sample_poly(n, rng, md), form(rng), sec(rng)
        lhs = S.act(el(EPS, one, scaled(u, f)), w)
        rhs = S.act(el(EPS, Form.function(f), u), w)
        return mismatch(lhs, rhs, render, f=f, a=render(list(u)), form=w)

    def anchor_one(rng):
        f, w, u = sample_poly(n, rng, md), form(rng), sec(rng)
        lhs = S.act(el(ONE, one, scaled(u, f)), w)
        rhs = S.act(el(ONE, Form.function(f), u), w) + S.act(el(EPS, de_rham(Form.function(f)), u), w)
        return mismatch(lhs, rhs, render, f=f, a=render(list(u)), form=w)

    def sample(rng):
        return sample_sharp(S, rng, md)

    def skew(rng):
        a, b = sample(rng), sample(rng)
        lhs = G.add(S.bracket(a, b), G.scale(S.bracket(b, a), _sign(S.degree(a) * S.degree(b))))
        return mismatch(S.reduce(lhs), {}, S.format, a=S.format(a), b=S.format(b))

    def jacobi(rng):
        a, b, c = sample(rng), sample(rng), sample(rng)
        lhs = S.bracket(a, S.bracket(b, c))
        rhs = G.add(S.bracket(S.bracket(a, b), c), G.scale(S.bracket(b, S.bracket(a, c)), _sign(S.degree(a) * S.degree(b))))
        return mismatch(lhs, S.reduce(rhs), S.format, a=S.format(a), b=S.format(b), c=S.format(c))

    def leibniz(rng):
        a, b = sample(rng), sample(rng)
        j = rng.randint(0, n)
        psi = sample_form(n, j, rng, md)
        lhs = S.bracket(a, G.left_mul(psi, b))
        rhs = G.add(G.left_mul(S.act(a, psi), b), G.scale(G.left_mul(psi, S.bracket(a, b)), _sign(S.degree(a) * j)))
        return mismatch(lhs, S.reduce(rhs), S.format, a=S.format(a), b=S.format(b), psi=psi)

    def dcompat(rng):
        a, b = sample(rng), sample(rng)
        lhs = S.diff(S.bracket(a, b))
        rhs = G.add(S.bracket(S.diff(a), b), G.scale(S.bracket(a, S.diff(b)), _sign(S.degree(a))))
        return mismatch(lhs, S.reduce(rhs), S.format, a=S.format(a), b=S.format(b))

    def anchor_morphism(rng):
        a, b = sample(rng), sample(rng)
        lhs = sharp_anchor(S, T, S.bracket(a, b))
        rhs = T.bracket(sharp_anchor(S, T, a), sharp_anchor(S, T, b))
        return mismatch(lhs, rhs, T.format, a=S.format(a), b=S.format(b))

    return [
        ctx.prop("descends-one-one", "[w1 fa1, w2 a2] = [f w1 a1, w2 a2] + [w1^df eps a1, w2 a2]", wd_one_one),
        ctx.prop("descends-one-eps", "[w1 fa1, w2 eps a2] = [f w1 a1, w2 eps a2] + [w1^df eps a1, w2 eps a2]", wd_one_eps),
        ctx.prop("descends-eps-eps", "[f w1 eps a1, w2 eps a2] = [w1 eps fa1, w2 eps a2]", wd_eps_eps),
        ctx.prop("descends-eps-one", "[f w1 eps a1, w2 a2] = [w1 eps fa1, w2 a2]", wd_eps_one),
        ctx.prop("anchor-descends-eps", "sigma(eps fa) = sigma(f eps a)", anchor_eps),
        ctx.prop("anchor-descends-one", "sigma(1 fa) = sigma(f a) + sigma(df eps a)", anchor_one),
        ctx.prop("skew", "[a,b] + (-1)^(|a||b|) [b,a] = 0", skew),
        ctx.prop("jacobi", "[a,[b,c]] = [[a,b],c] + (-1)^(|a||b|) [b,[a,c]]", jacobi),
        ctx.prop("leibniz", "[a, psi b] = sigma(a)(psi) b + (-1)^(|a||psi|) psi [a,b]", leibniz),
        ctx.prop("diff-compatible", "d[a,b] = [da,b] + (-1)^|a| [a,db]", dcompat),
        ctx.prop("anchor-morphism", "sigma[a,b] = [sigma a, sigma b] in the transgressed tangent algebroid", anchor_morphism),
    ]


def _operator(n: int, r: int, rng, md: int) -> AtiyahOperator:
    return AtiyahOperator(sample_vector_field(n, rng, md), sample_matrix(n, r, rng, md))


def suite_atiyah(ctx: Context) -> List[PropertyResult]:
    n, r, md = ctx.chart_dim, ctx.atiyah_rank, ctx.max_degree

    def op(rng):
        return _operator(n, r, rng, md)

    def module(rng):
        return _prev(n, r, rng.randint(-1, n), rng, md)

    def describe(D: AtiyahOperator) -> str:
        return f"symbol {render(D.symbol)}; matrix {[[render(x) for x in row] for row in D.matrix]}"

    def direct(rng):
        D, m = op(rng), module(rng)
        return mismatch(d_tilde(D, m), d_tilde_direct(D, m), str, D=describe(D), m=str(m))

    def on_tensors(rng):
        D = op(rng)
        A = _super(n, rng.randint(-1, n), rng, md)
        s = sample_section(n, r, rng, md)
        lhs = d_tilde(D, prev_normalize([(A, s)], n, r))
        LA = SuperFunc(lie_derivative(D.symbol, A.even), lie_derivative(D.symbol, A.odd))
        rhs = prev_normalize([(LA, s), (A, D.apply(s))], n, r)
        return mismatch(lhs, rhs, str, D=describe(D), A=str(A), s=render(list(s)))

    def dd_bracket(rng):
        D1, D2, m = op(rng), op(rng), module(rng)
        lhs = d_tilde(D1, d_tilde(D2, m)) - d_tilde(D2, d_tilde(D1, m))
        return mismatch(lhs, d_tilde(atiyah_bracket(D1, D2), m), str, D1=describe(D1), D2=describe(D2), m=str(m))

    def d_iota(rng):
        D1, D2, m = op(rng), op(rng), module(rng)
        lhs = d_tilde(D1, iota_tilde(D2, m)) - iota_tilde(D2, d_tilde(D1, m))
        return mismatch(lhs, iota_tilde(atiyah_bracket(D1, D2), m), str, D1=describe(D1), D2=describe(D2), m=str(m))

    def iota_iota(rng):
        D1, D2, m = op(rng), op(rng), module(rng)
        lhs = iota_tilde(D1, iota_tilde(D2, m)) + iota_tilde(D2, iota_tilde(D1, m))
        return mismatch(lhs, PrEvElement.zero(n, r), str, D1=describe(D1), D2=describe(D2), m=str(m))

    def iota_squared(rng):
        D, m = op(rng), module(rng)
        return mismatch(iota_tilde(D, iota_tilde(D, m)), PrEvElement.zero(n, r), str, D=describe(D), m=str(m))

    def d_is_commutator(rng):
        D, m = op(rng), module(rng)
        lhs = prev_diff(iota_tilde(D, m)) + iota_tilde(D, prev_diff(m))
        return mismatch(lhs, d_tilde_direct(D, m), str, D=describe(D), m=str(m))

    def d_leibniz(rng):
        D, m = op(rng), module(rng)
        psi = sample_form(n, rng.randint(0, n), rng, md)
        lhs = d_tilde(D, m.left_mul(psi))
        rhs = m.left_mul(lie_derivative(D.symbol, psi)) + d_tilde(D, m).left_mul(psi)
        return mismatch(lhs, rhs, str, D=describe(D), m=str(m), psi=render(psi))

    action = AtiyahAction(n, r)
    S = action.sharp

    def action_morphism(rng):
        a, b = sample_sharp(S, rng, 1), sample_sharp(S, rng, 1)
        m = module(rng)
        da, db = S.degree(a), S.degree(b)
        lhs = action.apply(S.bracket(a, b), m)
        rhs = action.apply(a, action.apply(b, m)) - action.apply(b, action.apply(a, m)).scale(_sign(da * db))
        return mismatch(lhs, rhs, str, a=S.format(a), b=S.format(b), m=str(m))

    return [
        ctx.prop("d-tilde-direct", "[d, iota~_D] = L_sigma(D) (x) 1 + 1 (x) D on normal forms", direct),
        ctx.prop("d-tilde-on-tensors", "D~(A (x) s) = L_sigma(D) A (x) s + A (x) D s", on_tensors),
        ctx.prop("d-tilde-bracket", "[D1~, D2~] = [D1, D2]~", dd_bracket),
        ctx.prop("d-tilde-iota", "[D1~, iota~_D2] = iota~_[D1,D2]", d_iota),
        ctx.prop("iota-iota", "[iota~_D1, iota~_D2] = 0", iota_iota),
        ctx.prop("iota-squared", "iota~_D iota~_D = 0", iota_squared),
        ctx.prop("d-tilde-leibniz", "D~(psi m) = L_sigma(D) psi m + psi D~ m", d_leibniz),
        ctx.prop("action-morphism", "L^E[a,b] = [L^E a, L^E b]", action_morphism),
    ]


# -- Courant structures -----------------------------------------------------

def suite_courant_axioms(ctx: Context) -> List[PropertyResult]:
    return verify_axioms(ctx.Q, ctx.seed, ctx.samples, ctx.max_degree, ctx.suite)


NEGATIVE_H = "x1 dx2^dx3^dx4"


def suite_courant_negative(ctx: Context) -> List[PropertyResult]:
    """Axioms for a structure twisted by a 3-form that is not closed."""
    Q = twisted_by(4, 1, parse_form(NEGATIVE_H, 4), check=False)
    checks = axiom_checks(Q, ctx.max_degree)
    return [ctx.prop(name, stmt, checks[name]) for name, stmt in AXIOMS]


def _require_exact(ctx: Context) -> None:
    if ctx.Q.family not in (STANDARD, TWISTED):
        raise SuiteNotApplicable(f"suite {ctx.suite!r} needs an exact family (standard or twisted)")


def suite_connection(ctx: Context) -> List[PropertyResult]:
    _require_exact(ctx)
    Q, md = ctx.Q, ctx.max_degree
    n, k = Q.n, Q.dim
    nabla0 = canonical_connection(Q)

    def columns(rng):
        return [sample_form(n, k, rng, md) for _ in range(n)]

    def offset(rng):
        return sample_form(n, k + 1, rng, md)

    def defects(c):
        return {"defects": "; ".join(f"<{i},{j}> = {render(p)}" for i, j, p in c.isotropy_defects())}

    def isotropic(rng):
        s = splitting(Q, columns(rng))
        c = isotropic_from_splitting(s)
        if not c.is_isotropic():
            return dict(defects(c), splitting=format_forms(s.columns))
        return None

    def half_pairing(rng):
        s = splitting(Q, columns(rng))
        half = half_pairing_correction(s)
        lhs = tuple(a + b for a, b in zip(s.columns, half))
        return mismatch(lhs, isotropic_from_splitting(s).columns, format_forms, splitting=format_forms(s.columns))

    def canonical_curvature():
        return mismatch(curvature(nabla0), Q.H, render)

    def torsor_curvature(rng):
        nabla = nabla0.act(offset(rng))
        w = offset(rng)
        lhs = curvature(nabla.act(w))
        return mismatch(lhs, curvature(nabla) + de_rham(w), render, connection=format_forms(nabla.columns), omega=w)

    def curvature_closed(rng):
        nabla = nabla0.act(offset(rng))
        return mismatch(de_rham(curvature(nabla)), Form.zero(n), render, connection=format_forms(nabla.columns))

    def torsor_isotropic(rng):
        nabla = nabla0.act(offset(rng))
        if not nabla.is_isotropic():
            return dict(defects(nabla), connection=format_forms(nabla.columns))
        return None

    def torsor_difference(rng):
        nabla = nabla0.act(offset(rng))
        w = offset(rng)
        return mismatch(connection_difference(nabla.act(w), nabla), w, render, omega=w)

    def torsor_composition(rng):
        w1, w2 = offset(rng), offset(rng)
        lhs = nabla0.act(w1).act(w2)
        return mismatch(lhs.columns, nabla0.act(w1 + w2).columns, format_forms, omega1=w1, omega2=w2)

    out = [ctx.prop("isotropic-correction", "the corrected splitting is isotropic", isotropic)]
    if k == 1:
        out.append(ctx.prop("half-pairing-correction", "s(x) - 1/2 <s(x), s(-)> agrees with the isotropic correction", half_pairing))
    out += [
        ctx.once("canonical-curvature", "c(nabla_0) = H", canonical_curvature),
        ctx.prop("torsor-curvature", "c(nabla + w) = c(nabla) + dw", torsor_curvature),
        ctx.prop("curvature-closed", "d c(nabla) = 0", curvature_closed),
        ctx.prop("torsor-isotropic", "nabla + w is isotropic", torsor_isotropic),
        ctx.prop("torsor-difference", "(nabla + w) - nabla = w", torsor_difference),
        ctx.prop("torsor-composition", "(nabla + w1) + w2 = nabla + (w1 + w2)", torsor_composition),
    ]
    # change of splitting as a morphism of Courant structures
    B = offset(_rng(ctx, "resplitting-potential"))
    psi = resplitting(n, k, B, Q.H)
    statements = {
        "morphism-bracket": "psi{q1,q2} = {psi q1, psi q2} for psi(a, x) = (a + i_x B, x)",
        "morphism-pairing": "<psi q1, psi q2> = <q1, q2>",
        "morphism-anchor": "pi(psi q) = pi(q)",
    }
    for name, chk in psi.checks(md).items():
        out.append(ctx.prop(f"resplitting-{name[len('morphism-'):]}", statements[name], chk))
    return out


def _rng(ctx: Context, label: str):
    return derived_rng(ctx.seed, ctx.suite, label)


# -- transgression ----------------------------------------------------------

def _term(tau: TauAlgebroid, shape, rng, md: int) -> G.Elem:
    return sample_term(tau, MARK if shape == "theta" else shape, rng, md)


def suite_tau_reduce(ctx: Context) -> List[PropertyResult]:
    tau, md = ctx.tau, ctx.max_degree
    n = tau.n

    def raw(rng):
        return G.add(*[_term(tau, pick(rng, ("theta", EPS, ONE)), rng, md) for _ in range(rng.randint(1, 3))])

    def psi(rng):
        return sample_form(n, rng.randint(0, n), rng, md)

    def kills(rng):
        for which in K_GENERATORS:
            g = G.left_mul(psi(rng), k_generator(tau, which, rng, md))
            red = tau.reduce(g)
            if red:
                return {"generator": which, "element": tau.format(red)}
        return None

    def idempotent(rng):
        r = tau.reduce(raw(rng))
        return mismatch(tau.reduce(r), r, tau.format)

    def additive(rng):
        a, b = raw(rng), raw(rng)
        return mismatch(tau.reduce(G.add(a, b)), G.add(tau.reduce(a), tau.reduce(b)), tau.format)

    def coanchor(rng):
        beta = psi(rng)
        alpha = sample_form(n, tau.Q.dim, rng, md)
        pa = tau.Q.coanchor(alpha)
        lhs = (tau.reduce(tau.eps(beta, pa)), tau.reduce(tau.one(beta, pa)))
        rhs = (tau.reduce(tau.mark(wedge(beta, alpha))), tau.reduce(tau.mark(wedge(beta, de_rham(alpha)))))
        return mismatch(lhs, rhs, lambda p: f"{tau.format(p[0])}; {tau.format(p[1])}", beta=beta, alpha=alpha)

    return [
        ctx.prop("kills-generators", "every O-multiple of a generator of K reduces to 0", kills),
        ctx.prop("idempotent", "reduce(reduce(x)) = reduce(x)", idempotent),
        ctx.prop("additive", "reduce(x + y) = reduce(x) + reduce(y)", additive),
        ctx.prop("coanchor-absorbed", "b eps pi^dagger(a) = b^a c and b pi^dagger(a) = b^da c", coanchor),
    ]


def suite_tau_ideal(ctx: Context) -> List[PropertyResult]:
    tau, md = ctx.tau, ctx.max_degree
    n = tau.n
    out = []
    for which in K_GENERATORS:
        for side in ("left", "right"):

            def check(rng, which=which, side=side):
                g = G.left_mul(sample_form(n, rng.randint(0, n), rng, md), k_generator(tau, which, rng, md))
                a = _term(tau, pick(rng, ("theta", EPS, ONE)), rng, md)
                got = tau.bracket(g, a) if side == "left" else tau.bracket(a, g)
                return mismatch(got, {}, tau.format, a=tau.format(a), generator=which)

            stmt = f"[{which}, a] = 0 modulo K" if side == "left" else f"[a, {which}] = 0 modulo K"
            out.append(ctx.prop(f"{which}-{side}", stmt, check))
    return out


SKEW_PAIRS = (("theta", EPS), ("theta", ONE), (EPS, EPS), (ONE, EPS), (ONE, ONE))
SHAPE_NAMES = {"theta": "theta", EPS: "eps", ONE: "one"}


def suite_tau_skew(ctx: Context) -> List[PropertyResult]:
    tau, md = ctx.tau, ctx.max_degree
    out = []
    for x, y in SKEW_PAIRS:

        def check(rng, x=x, y=y):
            a, b = _term(tau, x, rng, md), _term(tau, y, rng, md)
            s = _sign(tau.degree(a) * tau.degree(b))
            return mismatch(tau.reduce(G.add(tau.bracket(a, b), G.scale(tau.bracket(b, a), s))), {}, tau.format, a=tau.format(a), b=tau.format(b))

        name = f"{SHAPE_NAMES[x]}-{SHAPE_NAMES[y]}"
        out.append(ctx.prop(name, "[a,b] + (-1)^(|a||b|) [b,a] = 0", check))
    return out


JACOBI = "[a,[b,c]] = [[a,b],c] + (-1)^(|a||b|) [b,[a,c]]"


def _jacobi(tau: TauAlgebroid, a, b, c) -> Optional[Dict[str, str]]:
    lhs = tau.bracket(a, tau.bracket(b, c))
    rhs = G.add(tau.bracket(tau.bracket(a, b), c), G.scale(tau.bracket(b, tau.bracket(a, c)), _sign(tau.degree(a) * tau.degree(b))))
    return mismatch(lhs, tau.reduce(rhs), tau.format, a=tau.format(a), b=tau.format(b), c=tau.format(c))


def suite_tau_jacobi(ctx: Context) -> List[PropertyResult]:
    tau, md = ctx.tau, ctx.max_degree
    out = []
    for shapes in product(SHAPES, repeat=3):

        def check(rng, shapes=shapes):
            a, b, c = (_term(tau, s, rng, md) for s in shapes)
            return _jacobi(tau, a, b, c)

        out.append(ctx.prop("-".join(SHAPE_NAMES[s] for s in shapes), JACOBI, check))

    def mixed(rng):
        a, b, c = (sample_tau(tau, sample_degree(tau, rng), rng, md) for _ in range(3))
        return _jacobi(tau, a, b, c)

    out.append(ctx.prop("normal-forms", JACOBI, mixed))
    return out


def suite_tau_leibniz(ctx: Context) -> List[PropertyResult]:
    tau, md = ctx.tau, ctx.max_degree
    n = tau.n

    def sample(rng):
        return sample_tau(tau, sample_degree(tau, rng), rng, md)

    def right(rng):
        a, b = sample(rng), sample(rng)
        j = rng.randint(0, n)
        psi = sample_form(n, j, rng, md)
        lhs = tau.bracket(a, G.left_mul(psi, b))
        rhs = G.add(G.left_mul(tau.act(a, psi), b), G.scale(G.left_mul(psi, tau.bracket(a, b)), _sign(tau.degree(a) * j)))
        return mismatch(lhs, tau.reduce(rhs), tau.format, a=tau.format(a), b=tau.format(b), psi=psi)

    def raw_anchor(rng):
        a = _term(tau, pick(rng, SHAPES), rng, md)
        w = sample_form(n, rng.randint(0, n), rng, md)
        return mismatch(tau.act(tau.reduce(a), w), tau.act(a, w), render, a=tau.format(a), form=w)

    def anchor_derivation(rng):
        a = sample(rng)
        i = rng.randint(0, n)
        u, v = sample_form(n, i, rng, md), sample_form(n, rng.randint(0, n), rng, md)
        lhs = tau.act(a, wedge(u, v))
        rhs = wedge(tau.act(a, u), v) + wedge(u, tau.act(a, v)).scale(_sign(tau.degree(a) * i))
        return mismatch(lhs, rhs, render, a=tau.format(a), u=u, v=v)

    return [
        ctx.prop("leibniz", "[a, psi b] = sigma(a)(psi) b + (-1)^(|a||psi|) psi [a,b]", right),
        ctx.prop("anchor-descends", "sigma(x) depends only on the class of x modulo K", raw_anchor),
        ctx.prop("anchor-derivation", "sigma(a) is a derivation of degree |a|", anchor_derivation),
    ]


def suite_tau_diff(ctx: Context) -> List[PropertyResult]:
    tau, md = ctx.tau, ctx.max_degree
    n = tau.n

    def sample(rng):
        return sample_tau(tau, sample_degree(tau, rng), rng, md)

    def compat(rng):
        a, b = sample(rng), sample(rng)
        lhs = tau.diff(tau.bracket(a, b))
        rhs = G.add(tau.bracket(tau.diff(a), b), G.scale(tau.bracket(a, tau.diff(b)), _sign(tau.degree(a))))
        return mismatch(lhs, tau.reduce(rhs), tau.format, a=tau.format(a), b=tau.format(b))

    def squared(rng):
        a = sample(rng)
        return mismatch(tau.diff(tau.diff(a)), {}, tau.format, a=tau.format(a))

    def preserves_k(rng):
        which = pick(rng, K_GENERATORS)
        g = G.left_mul(sample_form(n, rng.randint(0, n), rng, md), k_generator(tau, which, rng, md))
        return mismatch(tau.diff(g), {}, tau.format, generator=which)

    def anchor_diff(rng):
        a = sample(rng)
        w = sample_form(n, rng.randint(0, n), rng, md)
        i = tau.degree(a)
        # sigma(d a) = [d, sigma(a)] as derivations of forms
        rhs = de_rham(tau.act(a, w)) - tau.act(a, de_rham(w)).scale(_sign(i))
        return mismatch(tau.act(tau.diff(a), w), rhs, render, a=tau.format(a), form=w)

    return [
        ctx.prop("bracket-compatible", "d[a,b] = [da,b] + (-1)^|a| [a,db]", compat),
        ctx.prop("squared", "d d a = 0", squared),
        ctx.prop("preserves-ideal", "d(K) lies in K", preserves_k),
        ctx.prop("anchor-compatible", "sigma(da) = [d, sigma(a)]", anchor_diff),
    ]


def suite_tau_anchor(ctx: Context) -> List[PropertyResult]:
    tau, md = ctx.tau, ctx.max_degree
    n = tau.n
    T = tangent_sharp(n)

    def sample(rng):
        return sample_tau(tau, sample_degree(tau, rng), rng, md)

    def morphism(rng):
        a, b = sample(rng), sample(rng)
        lhs = tau.anchor(tau.bracket(a, b), T)
        rhs = T.bracket(tau.anchor(a, T), tau.anchor(b, T))
        return mismatch(lhs, rhs, T.format, a=tau.format(a), b=tau.format(b))

    def diff(rng):
        a = sample(rng)
        return mismatch(tau.anchor(tau.diff(a), T), T.diff(tau.anchor(a, T)), T.format, a=tau.format(a))

    def action(rng):
        a = sample(rng)
        w = sample_form(n, rng.randint(0, n), rng, md)
        return mismatch(T.act(tau.anchor(a, T), w), tau.act(a, w), render, a=tau.format(a), form=w)

    return [
        ctx.prop("bracket-morphism", "sigma[a,b] = [sigma a, sigma b]", morphism),
        ctx.prop("diff-morphism", "sigma(da) = d sigma(a)", diff),
        ctx.prop("action", "sigma(a) acts on forms as a does", action),
    ]


def suite_marking(ctx: Context) -> List[PropertyResult]:
    tau = ctx.tau
    out = check_marked(marked(tau, ctx.max_degree), ctx.seed, ctx.samples, ctx.max_degree, ctx.suite)

    def grading():
        for i in range(-tau.k - 1, -1):
            ok, msg = marking_map_is_iso(tau, i)
            if not ok:
                return {"degree": str(i), "reason": msg}
        return None

    out.append(ctx.once("grading", "theta -> theta c is an isomorphism Omega^(i+k) -> tau^i for i <= -2", grading))
    return out


def suite_marking_negative(ctx: Context) -> List[PropertyResult]:
    """A non-central section of the transgressed tangent algebroid used as a marking."""
    n = 2
    S = tangent_sharp(n)
    c = S.one(Form.const(n, 1), vector_field_section(VectorField.coord(n, 0)))
    m = marked_sharp(S, c, 0, ctx.max_degree, name="marking-negative")
    return check_marked(m, ctx.seed, ctx.samples, ctx.max_degree, ctx.suite)


def _pullback_morphism(ctx: Context) -> CourantMorphism:
    Q = ctx.Q
    if Q.family in (STANDARD, TWISTED):
        B = sample_form(Q.n, Q.dim + 1, _rng(ctx, "pullback-potential"), ctx.max_degree)
        return resplitting(Q.n, Q.dim, B, Q.H)
    return identity_morphism(Q)


def suite_ctl(ctx: Context) -> List[PropertyResult]:
    tau, md = ctx.tau, ctx.max_degree
    Q = ctx.Q
    out = []
    phi = initial_ctl(tau, md)
    for name, chk in phi.checks(md).items():
        out.append(ctx.prop(f"initial-{name}", CTL_STATEMENTS[name], chk))
    psi = _pullback_morphism(ctx)
    tau_target = tau if psi.target is Q else tau_build(psi.target)
    pulled = ctl_pullback(psi, initial_ctl(tau_target, md))
    for name, chk in pulled.checks(md).items():
        out.append(ctx.prop(f"pullback-{name}", CTL_STATEMENTS[name], chk))

    def bad_anchor():
        S = standard(max(Q.n, 1), Q.dim)
        try:
            CourantMorphism(S, S, [b.scale(2) for b in S.complement_basis()])
        except CourantError:
            return None
        return {"reason": "a map scaling the anchor by 2 was accepted"}

    out.append(ctx.once("rejects-bad-anchor", "maps not commuting with the anchors are rejected", bad_anchor))
    for name, chk in extension_checks(tau, phi, md).items():
        out.append(ctx.prop(f"identity-{name}", EXTENSION_STATEMENTS[name], chk))
    tau_source = tau if psi.source is Q else tau_build(psi.source)
    for name, chk in extension_checks(tau_source, pulled, md).items():
        out.append(ctx.prop(f"pullback-{name}", EXTENSION_STATEMENTS[name], chk))
    return out


def suite_roundtrip(ctx: Context) -> List[PropertyResult]:
    tau = ctx.tau
    statements = {
        "anchor": "anchor of the derived structure equals pi",
        "coanchor": "alpha c corresponds to pi^dagger(alpha)",
        "pairing": "[eps q1, eps q2] = <q1,q2> c",
        "bracket": "[d(eps q1), eps q2] = eps {q1,q2}",
        "identification": "eps (x) q in degree -1 recovers q",
    }
    out = [ctx.prop(name, statements[name], chk) for name, chk in round_trip_checks(tau, ctx.max_degree).items()]
    out.append(ctx.once("basis", "all structure maps agree on pairs of basis elements", lambda: round_trip_on_basis(tau)))
    return out


def suite_quadratic_model(ctx: Context) -> List[PropertyResult]:
    if ctx.Q.family != QUADRATIC:
        raise SuiteNotApplicable(f"suite {ctx.suite!r} needs the quadratic family")
    tau, md = ctx.tau, ctx.max_degree
    out = [ctx.once("structure-constants", "the extension matches the model's brackets, differential and degrees", lambda: model_comparison(tau))]
    phi = quadratic_ctl(tau)
    for name, chk in phi.checks(md).items():
        out.append(ctx.prop(f"model-{name}", CTL_STATEMENTS[name], chk))
    for name, chk in extension_checks(tau, phi, md).items():
        out.append(ctx.prop(f"model-{name}", EXTENSION_STATEMENTS[name], chk))
    out += check_marked(quadratic_model(ctx.Q), ctx.seed, ctx.samples, md, ctx.suite)
    return out


# -- registry ---------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    default_samples: int
    runner: Callable[[Context], List[PropertyResult]]
    negative_control: bool = False
    families: tuple = (STANDARD, TWISTED, QUADRATIC, COMMUTATIVE)


_EXACT = (STANDARD, TWISTED)
_SUITES = [
    Suite("cartan", "d, interior product and Lie derivative identities on the chart", 50, suite_cartan),
    Suite("oddpath", "functions on the odd path space, ev and integration", 50, suite_oddpath),
    Suite("sharp", "transgressed Lie algebroid: well-definedness and Lie axioms", 25, suite_sharp),
    Suite("atiyah", "operators D~ and iota~ on a free module", 25, suite_atiyah),
    Suite("courant-axioms", "Courant axioms for the configured structure", 50, suite_courant_axioms),
    Suite("courant-negative", "negative control: twist by a non-closed form", 50, suite_courant_negative, True),
    Suite("connection", "connections, curvature and the torsor action", 50, suite_connection, families=_EXACT),
    Suite("tau-reduce", "normal form modulo the ideal K", 25, suite_tau_reduce),
    Suite("tau-ideal", "brackets with K vanish modulo K", 25, suite_tau_ideal),
    Suite("tau-skew", "graded skew-symmetry on generator pairings", 25, suite_tau_skew),
    Suite("tau-jacobi", "graded Jacobi on all shape combinations", 25, suite_tau_jacobi),
    Suite("tau-leibniz", "Leibniz rule and the anchor on forms", 25, suite_tau_leibniz),
    Suite("tau-diff", "differential: square zero and bracket compatibility", 25, suite_tau_diff),
    Suite("tau-anchor", "anchor to the transgressed tangent algebroid", 25, suite_tau_anchor),
    Suite("marking", "marking is central, anchored to 0, and grades low degrees", 25, suite_marking),
    Suite("marking-negative", "negative control: a non-central marking", 25, suite_marking_negative, True),
    Suite("ctl", "Courant-to-Lie morphisms, pullback and universal extension", 25, suite_ctl),
    Suite("roundtrip", "the derived Courant structure of the transgression", 50, suite_roundtrip),
    Suite("quadratic-model", "comparison with the explicit model of a quadratic Lie algebra", 25, suite_quadratic_model, families=(QUADRATIC,)),
]
SUITES: Dict[str, Suite] = {s.name: s for s in _SUITES}


def selected_suites(names: List[str], family: str) -> List[Suite]:
    """Suites in registry order; ``all`` (or no names) means every suite applicable to ``family``."""
    if not names or "all" in names:
        chosen = [s for s in _SUITES if family in s.families]
        extra = [n for n in names if n != "all"]
        return chosen + [SUITES[n] for n in extra if family not in SUITES[n].families]
    seen = []
    for n in names:
        if SUITES[n] not in seen:
            seen.append(SUITES[n])
    return seen


def run(cfg, suites: Optional[List[str]] = None) -> VerificationReport:
    """Run the configured suites; raises ``ConfigError`` for suites that do not apply."""
    from .config import ConfigError, build_structure

    Q = build_structure(cfg)
    names = list(cfg.suites) if suites is None else list(suites)
    chosen = selected_suites(names, Q.family)
    echo = cfg.echo()
    echo["suites"] = [s.name for s in chosen]
    echo["structure"] = Q.describe()
    report = VerificationReport(echo)
    tau_holder: Dict[str, TauAlgebroid] = {}
    for suite in chosen:
        if Q.family not in suite.families:
            raise ConfigError(f"suite {suite.name!r} does not apply to the {Q.family} family")
        ctx = Context(
            seed=cfg.seed,
            samples=cfg.samples if cfg.samples is not None else suite.default_samples,
            max_degree=cfg.max_poly_degree,
            chart_dim=cfg.chart_dim,
            atiyah_rank=cfg.atiyah_rank,
            Q=Q,
            suite=suite.name,
        )
        if "tau" in tau_holder:
            ctx.__dict__["tau"] = tau_holder["tau"]
        try:
            props = suite.runner(ctx)
        except SuiteNotApplicable as e:
            raise ConfigError(str(e)) from None
        if "tau" in ctx.__dict__:
            tau_holder["tau"] = ctx.__dict__["tau"]
        report.suites.append(SuiteResult(suite.name, props, suite.negative_control))
    return report
