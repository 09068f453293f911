"""Transgression of a Courant structure to a marked Lie algebroid on X-sharp.

For a Courant structure ``Q`` of dimension ``k - 1`` (pairing in
``Omega^{k-2}``) the transgression is the quotient of
``O[k] (+) O[eps] (x) Q`` by the submodule ``K`` generated by

    (1) alpha - eps (x) pi^dagger(alpha)
    (2) d alpha - 1 (x) pi^dagger(alpha)
    (3) beta ^ alpha - beta eps (x) pi^dagger(alpha)
    (4) eps (x) f q - f eps (x) q
    (5) 1 (x) f q - f (x) q - df eps (x) q

Generator keys are ``MARK`` (the marking ``c`` of degree ``-k``),
``(EPS, q)`` of degree -1 and ``(ONE, q)`` of degree 0 with ``q`` any
``CourantElement``.  On generators::

    [eps q1, eps q2] = <q1, q2> c
    [1 q1, eps q2]   = eps {q1, q2}
    [eps q1, 1 q2]   = -d<q1, q2> c + eps {q1, q2}
    [1 q1, 1 q2]     = 1 {q1, q2}
    c is central and anchored to 0; eps q acts by i_pi(q), 1 q by L_pi(q)
    d(eps q) = 1 q,  d(c) = 0

Everything else follows from the graded Leibniz rule (see ``graded``).
The normal form keeps ``c`` and the two keys for each basis element of the
chosen complement ``F`` of the coanchor image; ``TauElement`` is its
slot-wise view.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from . import graded as G
from .courant import CourantElement, CourantMorphism, CourantStructure, sample_courant
from .liealgebroid import EPS, ONE, MarkedLieAlgebroid, SharpAlgebroid, tangent_sharp, vector_field_section
from .report import mismatch
from .sampling import pick, sample_form, sample_poly
from .symcore import Form, VectorField, de_rham, interior, lie_derivative, wedge
from .textfmt import format_form, format_forms, render

MARK = "c"


class TransgressionError(ValueError):
    pass


# -- normal-form view -------------------------------------------------------

@dataclass(frozen=True)
class TauElement:
    """``theta c + sum eps_i eps (x) b_i + sum one_i (x) b_i`` over the basis ``b_i``."""

    theta: Form
    eps: Tuple[Form, ...]
    one: Tuple[Form, ...]

    def __str__(self) -> str:
        return f"{format_form(self.theta)} | eps: {format_forms(self.eps)} | one: {format_forms(self.one)}"


# -- the algebroid ----------------------------------------------------------

class TauAlgebroid(G.GradedAlgebroid):
    def __init__(self, Q: CourantStructure):
        super().__init__()
        self.Q = Q
        self.n = Q.n
        self.k = Q.dim + 1
        self.rank = Q.rank
        self.basis = Q.complement_basis()
        self._vf_cache: Dict[CourantElement, VectorField] = {}

    # generator data
    def key_degree(self, key: Hashable) -> int:
        if key == MARK:
            return -self.k
        return 0 if key[0] == ONE else -1

    def _vf(self, q: CourantElement) -> VectorField:
        v = self._vf_cache.get(q)
        if v is None:
            v = self.Q.anchor(q)
            self._vf_cache[q] = v
        return v

    def generator_action(self, x: Hashable, form: Form) -> Form:
        if x == MARK:
            return Form.zero(self.n)
        v = self._vf(x[1])
        if v.is_zero():
            return Form.zero(self.n)
        return lie_derivative(v, form) if x[0] == ONE else interior(v, form)

    def generator_bracket(self, x: Hashable, y: Hashable) -> G.Elem:
        if x == MARK or y == MARK:
            return {}
        (tx, q1), (ty, q2) = x, y
        if tx == EPS and ty == EPS:
            return _elem({MARK: self.Q.pairing(q1, q2)})
        br = self.Q.dorfman(q1, q2)
        if tx == ONE and ty == ONE:
            return _elem({(ONE, br): Form.const(self.n, 1)})
        out = _elem({(EPS, br): Form.const(self.n, 1)})
        if tx == EPS:
            G.add_term(out, MARK, -de_rham(self.Q.pairing(q1, q2)))
        return out

    def generator_diff(self, x: Hashable) -> G.Elem:
        if x != MARK and x[0] == EPS:
            return {(ONE, x[1]): Form.const(self.n, 1)}
        return {}

    def reduce(self, raw: G.Elem) -> G.Elem:
        """Normal form modulo ``K``: balance O_X-coefficients, absorb coanchor terms into ``c``."""
        out: G.Elem = {}
        for key, psi in raw.items():
            if not psi:
                continue
            if key == MARK:
                G.add_term(out, MARK, psi)
                continue
            tag, q = key
            if q.form:
                # generators (3) and (2) scaled by psi
                G.add_term(out, MARK, wedge(psi, q.form if tag == EPS else de_rham(q.form)))
            for i, f in enumerate(q.sec):
                if not f:
                    continue
                b = self.basis[i]
                G.add_term(out, (tag, b), psi.scale(f))
                if tag == ONE:
                    G.add_term(out, (EPS, b), wedge(psi, de_rham(Form.function(f))))
        return out

    # constructors
    def mark(self, theta: Optional[Form] = None) -> G.Elem:
        theta = Form.const(self.n, 1) if theta is None else theta
        return _elem({MARK: theta})

    def eps(self, psi: Form, q: CourantElement) -> G.Elem:
        return _elem({(EPS, q): psi})

    def one(self, psi: Form, q: CourantElement) -> G.Elem:
        return _elem({(ONE, q): psi})

    # normal-form view
    def to_tau(self, e: G.Elem) -> TauElement:
        e = self.reduce(e)
        z = Form.zero(self.n)
        return TauElement(
            e.get(MARK, z),
            tuple(e.get((EPS, b), z) for b in self.basis),
            tuple(e.get((ONE, b), z) for b in self.basis),
        )

    def from_tau(self, t: TauElement) -> G.Elem:
        out: G.Elem = {}
        G.add_term(out, MARK, t.theta)
        for b, a, w in zip(self.basis, t.eps, t.one):
            G.add_term(out, (EPS, b), a)
            G.add_term(out, (ONE, b), w)
        return out

    def format(self, e: G.Elem) -> str:
        return str(self.to_tau(e))

    def anchor(self, e: G.Elem, T: Optional[SharpAlgebroid] = None) -> G.Elem:
        """Image in the transgressed tangent algebroid: ``eps q -> eps pi(q)``, ``1 q -> 1 pi(q)``, ``c -> 0``."""
        T = T or tangent_sharp(self.n)
        out: G.Elem = {}
        for key, psi in e.items():
            if key == MARK:
                continue
            G.add_term(out, (key[0], vector_field_section(self._vf(key[1]))), psi)
        return T.reduce(out)


def _elem(d: Dict[Hashable, Form]) -> G.Elem:
    out: G.Elem = {}
    for k, v in d.items():
        G.add_term(out, k, v)
    return out


def tau_build(Q: CourantStructure) -> TauAlgebroid:
    return TauAlgebroid(Q)


def tau_reduce(tau: TauAlgebroid, raw: G.Elem) -> TauElement:
    return tau.to_tau(raw)


def tau_bracket(tau: TauAlgebroid, a: G.Elem, b: G.Elem) -> G.Elem:
    return tau.bracket(a, b)


def tau_diff(tau: TauAlgebroid, a: G.Elem) -> G.Elem:
    return tau.diff(a)


def tau_anchor(tau: TauAlgebroid, a: G.Elem) -> G.Elem:
    return tau.anchor(a)


# -- generators of K --------------------------------------------------------

K_GENERATORS = ("K1", "K2", "K3", "K4", "K5")


def k_generator(tau: TauAlgebroid, which: str, rng, max_degree: int = 2) -> G.Elem:
    """A random element of the given generator family of ``K`` (before scaling by O_{X#})."""
    Q, n = tau.Q, tau.n
    one = Form.const(n, 1)
    if which in ("K1", "K2", "K3"):
        alpha = sample_form(n, Q.dim, rng, max_degree)
        pa = Q.coanchor(alpha)
        if which == "K1":
            return G.sub(tau.mark(alpha), tau.eps(one, pa))
        if which == "K2":
            return G.sub(tau.mark(de_rham(alpha)), tau.one(one, pa))
        beta = sample_form(n, rng.randint(0, n), rng, max_degree)
        return G.sub(tau.mark(wedge(beta, alpha)), tau.eps(beta, pa))
    f = sample_poly(n, rng, max_degree)
    q = sample_courant(Q, rng, max_degree)
    ff = Form.function(f)
    if which == "K4":
        return G.sub(tau.eps(one, q.scale(f)), tau.eps(ff, q))
    if which == "K5":
        return G.sub(G.sub(tau.one(one, q.scale(f)), tau.one(ff, q)), tau.eps(de_rham(ff), q))
    raise TransgressionError(f"unknown generator family {which!r}")


# -- sampling ---------------------------------------------------------------

SHAPES = (EPS, ONE)


def shape_degrees(tau: TauAlgebroid, shape: str) -> Tuple[int, int]:
    """Range of tau-degrees in which a term of the given shape can be non-zero."""
    if shape == EPS:
        return -1, tau.n - 1
    if shape == ONE:
        return 0, tau.n
    return -tau.k, tau.n - tau.k


def sample_term(tau: TauAlgebroid, shape: str, rng, max_degree: int = 2, degree: Optional[int] = None) -> G.Elem:
    """``psi eps (x) q``, ``psi (x) q`` or ``theta c`` with an arbitrary ``q``.

    Without an explicit ``degree`` one is drawn from the shape's non-trivial range.
    """
    if degree is None:
        degree = rng.randint(*shape_degrees(tau, shape))
    if shape == MARK:
        return tau.mark(sample_form(tau.n, degree + tau.k, rng, max_degree))
    q = sample_courant(tau.Q, rng, max_degree)
    if shape == EPS:
        return tau.eps(sample_form(tau.n, degree + 1, rng, max_degree), q)
    return tau.one(sample_form(tau.n, degree, rng, max_degree), q)


def sample_tau(tau: TauAlgebroid, degree: int, rng, max_degree: int = 2) -> G.Elem:
    """Homogeneous normal-form element of tau-degree ``degree``; slots outside their range are zero."""
    n = tau.n
    t = TauElement(
        sample_form(n, degree + tau.k, rng, max_degree),
        tuple(sample_form(n, degree + 1, rng, max_degree) for _ in range(tau.rank)),
        tuple(sample_form(n, degree, rng, max_degree) for _ in range(tau.rank)),
    )
    return tau.from_tau(t)


def sample_degree(tau: TauAlgebroid, rng) -> int:
    """A tau-degree in which at least one slot is possibly non-zero."""
    return rng.randint(-tau.k, max(tau.n, 0))


def marked(tau: TauAlgebroid, max_degree: int = 2) -> MarkedLieAlgebroid:
    def sampler(rng):
        return sample_tau(tau, sample_degree(tau, rng), rng, max_degree)

    return MarkedLieAlgebroid(
        algebroid=tau,
        marking=tau.mark(),
        mark_degree=-tau.k,
        sampler=sampler,
        anchor_act=tau.act,
        is_marking_key=lambda key: key == MARK,
        format=tau.format,
        name=f"tau({tau.Q.family})",
    )


# -- grading ----------------------------------------------------------------

def graded_basis(tau: TauAlgebroid, i: int) -> List[Tuple[Hashable, Tuple[int, ...]]]:
    """O_X-basis of the degree-``i`` part of the normal form: ``(key, dx_I)`` pairs."""
    n = tau.n
    out: List[Tuple[Hashable, Tuple[int, ...]]] = []
    for key, deg in [(MARK, i + tau.k)] + [((EPS, b), i + 1) for b in tau.basis] + [((ONE, b), i) for b in tau.basis]:
        if 0 <= deg <= n:
            out.extend((key, idx) for idx in combinations(range(n), deg))
    return out


def marking_map_is_iso(tau: TauAlgebroid, i: int) -> Tuple[bool, str]:
    """``Omega^{i+k} -> tau^i``, ``theta -> theta c``, compared basis by basis.

    Each ``dx_I`` must map to the single normal-form basis element
    ``(c, dx_I)`` and these images must exhaust the basis of degree ``i``.
    """
    n = tau.n
    src = list(combinations(range(n), i + tau.k)) if 0 <= i + tau.k <= n else []
    images = []
    for idx in src:
        e = tau.reduce(tau.mark(Form.basis(n, idx)))
        if list(e) != [MARK] or e[MARK] != Form.basis(n, idx):
            return False, f"dx_{idx} maps to {tau.format(e)}"
        images.append((MARK, idx))
    target = graded_basis(tau, i)
    expected = comb(n, i + tau.k) if i + tau.k >= 0 else 0
    ok = sorted(images) == sorted(target) and len(src) == expected
    return ok, f"rank Omega^{i + tau.k} = {len(src)}, rank of degree {i} = {len(target)}"


# -- Courant-to-Lie morphisms -----------------------------------------------

class CtLMorphism:
    """``phi: Q[1] -> A`` into a marked algebroid, given on arbitrary elements of ``Q``."""

    def __init__(self, source: CourantStructure, target: MarkedLieAlgebroid, phi: Callable[[CourantElement], G.Elem]):
        self.source = source
        self.target = target
        self.phi = phi

    def __call__(self, q: CourantElement) -> G.Elem:
        return self.target.algebroid.reduce(self.phi(q))

    def checks(self, max_degree: int = 2) -> Dict[str, Callable]:
        Q, A, m = self.source, self.target.algebroid, self.target
        n = Q.n
        fmt = m.format

        def sq_anchor(rng):
            q = sample_courant(Q, rng, max_degree)
            w = sample_form(n, rng.randint(0, n), rng, max_degree)
            return mismatch(m.anchor_act(self(q), w), interior(Q.anchor(q), w), render, q=str(q), form=w)

        def sq_coanchor(rng):
            alpha = sample_form(n, Q.dim, rng, max_degree)
            lhs = self(Q.coanchor(alpha))
            rhs = A.reduce(G.left_mul(alpha, m.marking))
            return mismatch(lhs, rhs, fmt, alpha=alpha)

        def sq_pairing(rng):
            q1, q2 = sample_courant(Q, rng, max_degree), sample_courant(Q, rng, max_degree)
            lhs = A.bracket(self(q1), self(q2))
            rhs = A.reduce(G.left_mul(Q.pairing(q1, q2), m.marking))
            return mismatch(lhs, rhs, fmt, q1=str(q1), q2=str(q2))

        def sq_bracket(rng):
            q1, q2 = sample_courant(Q, rng, max_degree), sample_courant(Q, rng, max_degree)
            lhs = A.bracket(A.diff(self(q1)), self(q2))
            rhs = self(Q.dorfman(q1, q2))
            return mismatch(lhs, rhs, fmt, q1=str(q1), q2=str(q2))

        def linear(rng):
            q = sample_courant(Q, rng, max_degree)
            f = sample_poly(n, rng, max_degree)
            lhs = self(q.scale(f))
            rhs = A.reduce(G.left_mul(Form.function(f), self(q)))
            return mismatch(lhs, rhs, fmt, q=str(q), f=f)

        return {
            "square-anchor": sq_anchor,
            "square-coanchor": sq_coanchor,
            "square-pairing": sq_pairing,
            "square-bracket": sq_bracket,
            "o-linear": linear,
        }


CTL_STATEMENTS = {
    "square-anchor": "anchor(phi(q)) = i_pi(q) on forms",
    "square-coanchor": "phi(pi^dagger(alpha)) = alpha c",
    "square-pairing": "[phi(q1), phi(q2)] = <q1,q2> c",
    "square-bracket": "[d phi(q1), phi(q2)] = phi({q1,q2})",
    "o-linear": "phi(f q) = f phi(q)",
}


def initial_ctl(tau: TauAlgebroid, max_degree: int = 2) -> CtLMorphism:
    one = Form.const(tau.n, 1)
    return CtLMorphism(tau.Q, marked(tau, max_degree), lambda q: tau.eps(one, q))


def ctl_pullback(psi: CourantMorphism, phi: CtLMorphism) -> CtLMorphism:
    """``phi o psi`` for a Courant morphism ``psi: Q1 -> Q2`` and a CtL morphism from ``Q2``."""
    if psi.target is not phi.source:
        raise TransgressionError("the morphism does not land in the source of the CtL morphism")
    return CtLMorphism(psi.source, phi.target, lambda q: phi.phi(psi(q)))


def universal_extend(tau: TauAlgebroid, phi: CtLMorphism) -> Callable[[G.Elem], G.Elem]:
    """``theta + w eps (x) q1 + b (x) q2  ->  theta c_A + w phi(q1) + b d(phi(q2))``."""
    if phi.source is not tau.Q:
        raise TransgressionError("the CtL morphism starts at a different Courant structure")
    A = phi.target.algebroid
    images = [phi(b) for b in tau.basis]
    d_images = [A.diff(x) for x in images]
    c_A = phi.target.marking

    def ext(e: G.Elem) -> G.Elem:
        t = tau.to_tau(e)
        out = G.left_mul(t.theta, c_A)
        for w, x in zip(t.eps, images):
            if w:
                out = G.add(out, G.left_mul(w, x))
        for b, dx in zip(t.one, d_images):
            if b:
                out = G.add(out, G.left_mul(b, dx))
        return A.reduce(out)

    return ext


# -- the explicit model for a quadratic Lie algebra -------------------------

Z = "z"


class QuadraticModel(G.GradedAlgebroid):
    """``C[2] (+) g[1] (+) g`` on a point.

    Keys ``z`` (degree -2), ``("u", i)`` (degree -1) and ``("v", i)``
    (degree 0).  Brackets ``[u_i, u_j] = G_ij z``, ``[v_i, u_j] = u_[i,j]``,
    ``[v_i, v_j] = v_[i,j]``; differential ``u_i -> v_i``; zero anchor.
    """

    def __init__(self, Q: CourantStructure):
        super().__init__()
        if Q.n != 0 or Q.gram is None:
            raise TransgressionError("the explicit model needs a quadratic Lie algebra on a point")
        self.n = 0
        self.Q = Q
        self.rank = Q.rank
        self.gram = [[g.constant_term() for g in row] for row in Q.gram]
        self.consts = [[[c.constant_term() for c in Q.F.bracket(Q.F.basis(i), Q.F.basis(j))] for j in range(self.rank)] for i in range(self.rank)]

    def key_degree(self, key: Hashable) -> int:
        if key == Z:
            return -2
        return -1 if key[0] == "u" else 0

    def generator_action(self, x: Hashable, form: Form) -> Form:
        return Form.zero(0)

    def generator_bracket(self, x: Hashable, y: Hashable) -> G.Elem:
        if x == Z or y == Z:
            return {}
        (tx, i), (ty, j) = x, y
        if tx == "u" and ty == "u":
            return _elem({Z: Form.const(0, self.gram[i][j])})
        tag = "v" if tx == ty == "v" else "u"
        return _elem({(tag, l): Form.const(0, c) for l, c in enumerate(self.consts[i][j])})

    def generator_diff(self, x: Hashable) -> G.Elem:
        if x != Z and x[0] == "u":
            return {("v", x[1]): Form.const(0, 1)}
        return {}

    def reduce(self, raw: G.Elem) -> G.Elem:
        return _elem(raw)

    def format(self, e: G.Elem) -> str:
        def name(k):
            return k if k == Z else f"{k[0]}{k[1]}"

        terms = [f"{format_form(v)}*{name(k)}" for k, v in sorted(e.items(), key=lambda kv: str(kv[0]))]
        return " + ".join(terms) if terms else "0"


def quadratic_model(Q: CourantStructure) -> MarkedLieAlgebroid:
    M = QuadraticModel(Q)

    def sampler(rng):
        key = pick(rng, [Z] + [(t, i) for t in ("u", "v") for i in range(M.rank)])
        return {key: Form.const(0, rng.randint(1, 3))}

    return MarkedLieAlgebroid(M, {Z: Form.const(0, 1)}, -2, sampler, M.act, lambda key: key == Z, M.format, "quadratic-model")


def quadratic_ctl(tau: TauAlgebroid) -> CtLMorphism:
    """``q -> sum q_i u_i`` from the quadratic Lie algebra into its explicit model."""
    target = quadratic_model(tau.Q)

    def phi(q: CourantElement) -> G.Elem:
        return _elem({("u", i): Form.function(f) for i, f in enumerate(q.sec)})

    return CtLMorphism(tau.Q, target, phi)


def structure_constants(A: G.GradedAlgebroid, basis: Sequence[Hashable]) -> Dict[str, Dict]:
    """Brackets and differential of a list of generators, as nested dicts keyed by basis position."""
    one = Form.const(A.n, 1)
    idx = {k: i for i, k in enumerate(basis)}

    def coords(e: G.Elem) -> Dict[int, object]:
        out = {}
        for k, v in e.items():
            if k not in idx:
                raise TransgressionError(f"result leaves the span of the basis: {k!r}")
            out[idx[k]] = v.function_part().constant_term()
        return out

    br = {(i, j): coords(A.bracket({x: one}, {y: one})) for i, x in enumerate(basis) for j, y in enumerate(basis)}
    dd = {i: coords(A.diff({x: one})) for i, x in enumerate(basis)}
    return {"bracket": br, "diff": dd, "degree": {i: A.key_degree(x) for i, x in enumerate(basis)}}


# -- recovering the Courant structure ---------------------------------------

class CourOf:
    """Courant data on the degree -1 part of a marked algebroid.

    ``pi`` is the anchor restricted to degree -1 (a degree -1 derivation
    ``i_X``; ``X_j`` is its value on ``dx_j``), ``pi^dagger(alpha) =
    alpha c``, ``<a, b> c = [a, b]`` and ``{a, b} = [d a, b]``.
    """

    def __init__(self, m: MarkedLieAlgebroid, n: int):
        self.m = m
        self.A = m.algebroid
        self.n = n

    def _marking_coefficient(self, e: G.Elem) -> Form:
        out = Form.zero(self.n)
        for key, v in e.items():
            if not self.m.is_marking_key(key):
                raise TransgressionError(f"degree -2 element outside the marking line: {self.m.format(e)}")
            out = out + v
        return out

    def anchor(self, a: G.Elem) -> VectorField:
        return VectorField([self.m.anchor_act(a, Form.dx(self.n, j)).function_part() for j in range(self.n)], self.n)

    def coanchor(self, alpha: Form) -> G.Elem:
        return self.A.reduce(G.left_mul(alpha, self.m.marking))

    def pairing(self, a: G.Elem, b: G.Elem) -> Form:
        return self._marking_coefficient(self.A.bracket(a, b))

    def dorfman(self, a: G.Elem, b: G.Elem) -> G.Elem:
        return self.A.bracket(self.A.diff(a), b)


def cour_of(m: MarkedLieAlgebroid, n: int) -> CourOf:
    if m.mark_degree > -2:
        raise TransgressionError("the marking must sit in degree -2 or below")
    return CourOf(m, n)


def courant_element_of(tau: TauAlgebroid, e: G.Elem) -> CourantElement:
    """Inverse of ``q -> eps (x) q`` on normal forms of degree -1."""
    t = tau.to_tau(e)
    if any(t.one):
        raise TransgressionError("element has a non-zero 1-slot; not of degree -1")
    sec = []
    for a in t.eps:
        if a.degrees() not in ((), (0,)):
            raise TransgressionError("eps-slot coefficient is not a function")
        sec.append(a.function_part())
    return CourantElement(t.theta, tuple(sec))


def round_trip_checks(tau: TauAlgebroid, max_degree: int = 2) -> Dict[str, Callable]:
    """Compare the recovered structure maps with those of ``Q`` on random elements."""
    Q, n = tau.Q, tau.n
    C = cour_of(marked(tau, max_degree), n)
    phi = initial_ctl(tau, max_degree)

    def pair(rng):
        return sample_courant(Q, rng, max_degree), sample_courant(Q, rng, max_degree)

    def c_anchor(rng):
        q = sample_courant(Q, rng, max_degree)
        return mismatch(C.anchor(phi(q)), Q.anchor(q), render, q=str(q))

    def c_coanchor(rng):
        alpha = sample_form(n, Q.dim, rng, max_degree)
        return mismatch(courant_element_of(tau, C.coanchor(alpha)), Q.coanchor(alpha), str, alpha=alpha)

    def c_pairing(rng):
        q1, q2 = pair(rng)
        return mismatch(C.pairing(phi(q1), phi(q2)), Q.pairing(q1, q2), render, q1=str(q1), q2=str(q2))

    def c_bracket(rng):
        q1, q2 = pair(rng)
        return mismatch(courant_element_of(tau, C.dorfman(phi(q1), phi(q2))), Q.dorfman(q1, q2), str, q1=str(q1), q2=str(q2))

    def c_identify(rng):
        q = sample_courant(Q, rng, max_degree)
        return mismatch(courant_element_of(tau, phi(q)), q, str, q=str(q))

    return {
        "anchor": c_anchor,
        "coanchor": c_coanchor,
        "pairing": c_pairing,
        "bracket": c_bracket,
        "identification": c_identify,
    }


def courant_basis(Q: CourantStructure) -> List[CourantElement]:
    """The complement basis followed by ``pi^dagger(dx_I)`` for every ``dim``-subset ``I``."""
    out = list(Q.complement_basis())
    for idx in combinations(range(Q.n), Q.dim):
        out.append(Q.coanchor(Form.basis(Q.n, idx)))
    return out


def round_trip_on_basis(tau: TauAlgebroid) -> Optional[Dict[str, str]]:
    """Exact comparison of every structure map on all pairs of basis elements."""
    Q, n = tau.Q, tau.n
    C = cour_of(marked(tau), n)
    phi = initial_ctl(tau)
    basis = courant_basis(Q)
    for q1 in basis:
        cex = mismatch(C.anchor(phi(q1)), Q.anchor(q1), render, q=str(q1))
        if cex:
            return cex
        for q2 in basis:
            cex = mismatch(C.pairing(phi(q1), phi(q2)), Q.pairing(q1, q2), render, q1=str(q1), q2=str(q2)) or mismatch(
                courant_element_of(tau, C.dorfman(phi(q1), phi(q2))), Q.dorfman(q1, q2), str, q1=str(q1), q2=str(q2)
            )
            if cex:
                return cex
    for idx in combinations(range(n), Q.dim):
        alpha = Form.basis(n, idx)
        cex = mismatch(courant_element_of(tau, C.coanchor(alpha)), Q.coanchor(alpha), str, alpha=alpha)
        if cex:
            return cex
    return None


def extension_checks(tau: TauAlgebroid, phi: CtLMorphism, max_degree: int = 2) -> Dict[str, Callable]:
    """The universal extension is a morphism of marked algebroids restricting to ``phi``."""
    ext = universal_extend(tau, phi)
    m = phi.target
    A = m.algebroid
    Q, n = tau.Q, tau.n
    initial = initial_ctl(tau, max_degree)
    fmt = m.format

    def sample(rng):
        return sample_tau(tau, sample_degree(tau, rng), rng, max_degree)

    def c_bracket(rng):
        a, b = sample(rng), sample(rng)
        return mismatch(ext(tau.bracket(a, b)), A.bracket(ext(a), ext(b)), fmt, a=tau.format(a), b=tau.format(b))

    def c_diff(rng):
        a = sample(rng)
        return mismatch(ext(tau.diff(a)), A.diff(ext(a)), fmt, a=tau.format(a))

    def c_anchor(rng):
        a = sample(rng)
        w = sample_form(n, rng.randint(0, n), rng, max_degree)
        return mismatch(m.anchor_act(ext(a), w), tau.act(a, w), render, a=tau.format(a), form=w)

    def c_marking(rng):
        theta = sample_form(n, rng.randint(0, n), rng, max_degree)
        return mismatch(ext(tau.mark(theta)), A.reduce(G.left_mul(theta, m.marking)), fmt, theta=theta)

    def c_restrict(rng):
        q = sample_courant(Q, rng, max_degree)
        return mismatch(ext(initial(q)), phi(q), fmt, q=str(q))

    return {
        "extension-bracket": c_bracket,
        "extension-diff": c_diff,
        "extension-anchor": c_anchor,
        "extension-marking": c_marking,
        "extension-restricts": c_restrict,
    }


EXTENSION_STATEMENTS = {
    "extension-bracket": "ext([a,b]) = [ext(a), ext(b)]",
    "extension-diff": "ext(d a) = d ext(a)",
    "extension-anchor": "anchor(ext(a)) = anchor(a) on forms",
    "extension-marking": "ext(theta c) = theta c_A",
    "extension-restricts": "ext(eps (x) q) = phi(q)",
}


def model_comparison(tau: TauAlgebroid) -> Optional[Dict[str, str]]:
    """Compare the structure constants of tau(g) and the explicit model through the universal extension."""
    phi = quadratic_ctl(tau)
    ext = universal_extend(tau, phi)
    M = phi.target.algebroid
    one = Form.const(0, 1)
    tau_basis = [MARK] + [(EPS, b) for b in tau.basis] + [(ONE, b) for b in tau.basis]
    images = []
    for key in tau_basis:
        img = ext({key: one})
        if len(img) != 1 or next(iter(img.values())) != one:
            return {"generator": str(key), "image": M.format(img), "reason": "basis element does not map to a basis element"}
        images.append(next(iter(img)))
    if len(set(images)) != len(images) or set(images) != {Z} | {(t, i) for t in ("u", "v") for i in range(M.rank)}:
        return {"images": str(images), "reason": "extension is not a bijection of bases"}
    src = structure_constants(tau, tau_basis)
    dst = structure_constants(M, images)
    for part in ("degree", "diff", "bracket"):
        if src[part] != dst[part]:
            bad = [k for k in src[part] if src[part][k] != dst[part].get(k)]
            k = bad[0]
            return {"component": part, "entry": str(k), "lhs": str(src[part][k]), "rhs": str(dst[part].get(k))}
    return None
