"""Lie algebroids on a chart, their odd-path transgression and Atiyah actions.

A Lie algebroid here is free of rank r: a section is a tuple of r
polynomials over a fixed basis ``a_0..a_{r-1}``, the anchor sends ``a_i`` to a
vector field and the bracket of basis sections is given by structure
functions.  ``SharpAlgebroid`` is its transgression to the shifted tangent
bundle, with elements ``sum one_i (x) a_i + sum eps_i eps (x) a_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from . import graded as G
from .oddpath import PrEvElement, prev_diff
from .report import mismatch, run_property
from .sampling import sample_form
from .textfmt import format_forms, render
from .symcore import Form, Poly, VectorField, de_rham, interior, lie_derivative, vf_bracket, wedge

Section = Tuple[Poly, ...]


def _zero_section(n: int, r: int) -> Section:
    return tuple(Poly.zero(n) for _ in range(r))


def _unit_section(n: int, r: int, i: int) -> Section:
    return tuple(Poly.const(n, 1 if j == i else 0) for j in range(r))


def section_add(u: Section, v: Section) -> Section:
    return tuple(a + b for a, b in zip(u, v))


def section_scale(u: Section, f) -> Section:
    return tuple(a * f for a in u)


class LieAlgebroidStructure:
    """Free Lie algebroid presented by anchors and structure functions.

    ``structure[i][j]`` is the section ``[a_i, a_j]``.
    """

    def __init__(self, n: int, anchors: Sequence[VectorField], structure: Sequence[Sequence[Section]], name: str = ""):
        self.n = n
        self.rank = len(anchors)
        self.anchors = tuple(anchors)
        self.structure = tuple(tuple(tuple(s) for s in row) for row in structure)
        self.name = name
        if len(self.structure) != self.rank or any(len(row) != self.rank for row in self.structure):
            raise ValueError("structure table must be rank x rank")
        for v in self.anchors:
            if v.n != n:
                raise ValueError("anchor lives on a different chart")

    def zero(self) -> Section:
        return _zero_section(self.n, self.rank)

    def basis(self, i: int) -> Section:
        return _unit_section(self.n, self.rank, i)

    def anchor(self, u: Section) -> VectorField:
        out = VectorField.zero(self.n)
        for f, v in zip(u, self.anchors):
            if f:
                out = out + v.scale(f)
        return out

    def bracket(self, u: Section, v: Section) -> Section:
        n, r = self.n, self.rank
        out = [Poly.zero(n) for _ in range(r)]
        for i, f in enumerate(u):
            if not f:
                continue
            rho = self.anchors[i]
            for k in range(r):
                if v[k]:
                    out[k] = out[k] + f * rho(v[k])
            for j, g in enumerate(v):
                if not g:
                    continue
                fg = f * g
                for k, c in enumerate(self.structure[i][j]):
                    if c:
                        out[k] = out[k] + fg * c
        for j, g in enumerate(v):
            if not g:
                continue
            rho = self.anchors[j]
            for k in range(r):
                if u[k]:
                    out[k] = out[k] - g * rho(u[k])
        return tuple(out)


def tangent_algebroid(n: int) -> LieAlgebroidStructure:
    zero = _zero_section(n, n)
    return LieAlgebroidStructure(
        n, [VectorField.coord(n, i) for i in range(n)], [[zero] * n for _ in range(n)], name="tangent"
    )


def lie_algebra(constants: Sequence[Sequence[Sequence[int]]], n: int = 0, name: str = "") -> LieAlgebroidStructure:
    """Lie algebra with ``[e_i, e_j] = sum_k constants[i][j][k] e_k`` as an algebroid with zero anchor."""
    r = len(constants)
    structure = [[tuple(Poly.const(n, c) for c in constants[i][j]) for j in range(r)] for i in range(r)]
    return LieAlgebroidStructure(n, [VectorField.zero(n)] * r, structure, name=name or "lie-algebra")


def levi_civita(i: int, j: int, k: int) -> int:
    if len({i, j, k}) < 3:
        return 0
    return 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


SO3_CONSTANTS = [[[levi_civita(i, j, k) for k in range(3)] for j in range(3)] for i in range(3)]
# Killing form of so(3) in the basis with [e_i, e_j] = eps_ijk e_k
SO3_KILLING = [[-2 if i == j else 0 for j in range(3)] for i in range(3)]


def so3_action_algebroid() -> LieAlgebroidStructure:
    """so(3) acting on R^3 by rotations: anchor of e_a is the field x -> x cross e_a."""
    n = 3
    xs = [Poly.var(n, i) for i in range(n)]
    anchors = []
    for a in range(3):
        comps = [Poly.zero(n)] * 3
        for b in range(3):
            for c in range(3):
                s = levi_civita(b, a, c)
                if s:
                    comps[c] = comps[c] + xs[b].scale(s)
        anchors.append(VectorField(comps, n))
    structure = [[tuple(Poly.const(n, SO3_CONSTANTS[i][j][k]) for k in range(3)) for j in range(3)] for i in range(3)]
    return LieAlgebroidStructure(n, anchors, structure, name="so3-action")


def killing_form(alg: LieAlgebroidStructure) -> List[List[Poly]]:
    """tr(ad a_i ad a_j) for a Lie algebra with constant structure (zero anchor)."""
    r = alg.rank
    n = alg.n

    def ad(i):
        return [[alg.structure[i][j][k] for j in range(r)] for k in range(r)]

    out = []
    for i in range(r):
        row = []
        A = ad(i)
        for j in range(r):
            B = ad(j)
            t = Poly.zero(n)
            for p in range(r):
                for q in range(r):
                    t = t + A[p][q] * B[q][p]
            row.append(t)
        out.append(row)
    return out


# -- Atiyah algebroid of a free module -------------------------------------

@dataclass(frozen=True)
class AtiyahOperator:
    """First-order operator ``D(f e_j) = xi(f) e_j + f sum_i matrix[i][j] e_i``."""

    symbol: VectorField
    matrix: Tuple[Tuple[Poly, ...], ...]

    @property
    def n(self) -> int:
        return self.symbol.n

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def apply(self, coeffs: Sequence[Poly]) -> Tuple[Poly, ...]:
        """D applied to the section sum_j coeffs[j] e_j."""
        r = self.rank
        out = []
        for i in range(r):
            t = self.symbol(coeffs[i])
            for j in range(r):
                if self.matrix[i][j] and coeffs[j]:
                    t = t + self.matrix[i][j] * coeffs[j]
            out.append(t)
        return tuple(out)

    def scale(self, f: Poly) -> "AtiyahOperator":
        return AtiyahOperator(self.symbol.scale(f), tuple(tuple(m * f for m in row) for row in self.matrix))


def atiyah_bracket(d1: AtiyahOperator, d2: AtiyahOperator) -> AtiyahOperator:
    """Commutator ``D1 D2 - D2 D1``."""
    r = d1.rank
    mat = []
    for i in range(r):
        row = []
        for j in range(r):
            t = d1.symbol(d2.matrix[i][j]) - d2.symbol(d1.matrix[i][j])
            for k in range(r):
                t = t + d1.matrix[i][k] * d2.matrix[k][j] - d2.matrix[i][k] * d1.matrix[k][j]
            row.append(t)
        mat.append(tuple(row))
    return AtiyahOperator(vf_bracket(d1.symbol, d2.symbol), tuple(mat))


def atiyah_algebroid(n: int, r: int) -> LieAlgebroidStructure:
    """Atiyah algebroid of the trivial rank-r module.

    Basis: coordinate derivations ``d_i`` (acting diagonally) then matrix
    units ``E_ab`` in row-major order.
    """
    size = n + r * r
    zero = _zero_section(n, size)

    def unit(a, b):
        return n + a * r + b

    structure = [[zero] * size for _ in range(size)]
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for d in range(r):
                    s = [Poly.zero(n)] * size
                    if b == c:
                        s[unit(a, d)] = s[unit(a, d)] + Poly.const(n, 1)
                    if d == a:
                        s[unit(c, b)] = s[unit(c, b)] - Poly.const(n, 1)
                    structure[unit(a, b)][unit(c, d)] = tuple(s)
    anchors = [VectorField.coord(n, i) for i in range(n)] + [VectorField.zero(n)] * (r * r)
    return LieAlgebroidStructure(n, anchors, structure, name=f"atiyah-rank{r}")


def atiyah_operator_of(alg: LieAlgebroidStructure, r: int, u: Section) -> AtiyahOperator:
    """The operator represented by a section of ``atiyah_algebroid(n, r)``."""
    n = alg.n
    sym = VectorField(list(u[:n]), n)
    mat = tuple(tuple(u[n + a * r + b] for b in range(r)) for a in range(r))
    return AtiyahOperator(sym, mat)


def section_of_atiyah_operator(n: int, D: AtiyahOperator) -> Section:
    r = D.rank
    return tuple(D.symbol.components) + tuple(D.matrix[a][b] for a in range(r) for b in range(r))


def _sign(k: int) -> int:
    return -1 if k & 1 else 1


def iota_tilde(D: AtiyahOperator, m: PrEvElement) -> PrEvElement:
    """Odd operator of degree -1 on pr*ev*E attached to D.

    ``psi (x) e_j -> i_xi psi (x) e_j + (-1)^|psi| psi eps (x) M e_j`` and
    ``psi eps (x) e_j -> i_xi psi eps (x) e_j``.
    """
    r = D.rank
    one = [interior(D.symbol, a) for a in m.one]
    eps = [interior(D.symbol, a) for a in m.eps]
    for j, a in enumerate(m.one):
        if not a:
            continue
        for k, p in a.parts().items():
            sp = p.scale(_sign(k))
            for i in range(r):
                c = D.matrix[i][j]
                if c:
                    eps[i] = eps[i] + sp.scale(c)
    return PrEvElement(tuple(one), tuple(eps))


def d_tilde(D: AtiyahOperator, m: PrEvElement) -> PrEvElement:
    """Even operator ``[d, iota_tilde(D)] = d iota + iota d``."""
    return prev_diff(iota_tilde(D, m)) + iota_tilde(D, prev_diff(m))


def d_tilde_direct(D: AtiyahOperator, m: PrEvElement) -> PrEvElement:
    """``L_xi A (x) e + A (x) D e`` computed without the differential, then normalized."""
    r = D.rank
    one = [lie_derivative(D.symbol, a) for a in m.one]
    eps = [lie_derivative(D.symbol, a) for a in m.eps]
    for j in range(r):
        for i in range(r):
            c = D.matrix[i][j]
            if c:
                # A (x) c e_i = A ev(c) (x) e_i
                one[i] = one[i] + m.one[j].scale(c)
                eps[i] = eps[i] + m.eps[j].scale(c) + wedge(m.one[j], de_rham(Form.function(c)))
    return PrEvElement(tuple(one), tuple(eps))


# -- transgression ----------------------------------------------------------

ONE = "1"
EPS = "e"


class SharpAlgebroid(G.GradedAlgebroid):
    """Transgression of a free Lie algebroid to the shifted tangent bundle.

    Generator keys are ``(ONE, section)`` and ``(EPS, section)`` of degree 0
    and -1.  Normal forms use basis sections only.
    """

    def __init__(self, alg: LieAlgebroidStructure):
        super().__init__()
        self.alg = alg
        self.n = alg.n
        self.rank = alg.rank
        self.basis = [alg.basis(i) for i in range(alg.rank)]
        self._vf_cache: Dict[Section, VectorField] = {}

    def key_degree(self, key) -> int:
        return 0 if key[0] == ONE else -1

    def _vf(self, u: Section) -> VectorField:
        v = self._vf_cache.get(u)
        if v is None:
            v = self.alg.anchor(u)
            self._vf_cache[u] = v
        return v

    def generator_action(self, x, form: Form) -> Form:
        v = self._vf(x[1])
        if v.is_zero():
            return Form.zero(self.n)
        if x[0] == ONE:
            return lie_derivative(v, form)
        return interior(v, form)

    def generator_bracket(self, x, y) -> G.Elem:
        if x[0] == EPS and y[0] == EPS:
            return {}
        tag = ONE if (x[0] == ONE and y[0] == ONE) else EPS
        return {(tag, self.alg.bracket(x[1], y[1])): Form.const(self.n, 1)}

    def generator_diff(self, x) -> G.Elem:
        if x[0] == EPS:
            return {(ONE, x[1]): Form.const(self.n, 1)}
        return {}

    def reduce(self, raw: G.Elem) -> G.Elem:
        out: G.Elem = {}
        for (tag, u), psi in raw.items():
            for i, f in enumerate(u):
                if not f:
                    continue
                b = self.basis[i]
                G.add_term(out, (tag, b), psi.scale(f))
                if tag == ONE:
                    G.add_term(out, (EPS, b), wedge(psi, de_rham(Form.function(f))))
        return out

    # conversions between the generic dict form and PrEvElement
    def to_prev(self, e: G.Elem) -> PrEvElement:
        e = self.reduce(e)
        z = Form.zero(self.n)
        one = [z] * self.rank
        eps = [z] * self.rank
        for i, b in enumerate(self.basis):
            one[i] = e.get((ONE, b), z)
            eps[i] = e.get((EPS, b), z)
        return PrEvElement(tuple(one), tuple(eps))

    def from_prev(self, m: PrEvElement) -> G.Elem:
        out: G.Elem = {}
        for i, b in enumerate(self.basis):
            G.add_term(out, (ONE, b), m.one[i])
            G.add_term(out, (EPS, b), m.eps[i])
        return out

    def one(self, psi: Form, u: Section) -> G.Elem:
        return {(ONE, tuple(u)): psi} if psi else {}

    def eps(self, psi: Form, u: Section) -> G.Elem:
        return {(EPS, tuple(u)): psi} if psi else {}

    def format(self, e: G.Elem) -> str:
        m = self.to_prev(e)
        return f"one: {format_forms(m.one)} | eps: {format_forms(m.eps)}"


def tangent_sharp(n: int) -> SharpAlgebroid:
    return SharpAlgebroid(tangent_algebroid(n))


def vector_field_section(v: VectorField) -> Section:
    return tuple(v.components)


def sharp_anchor(A: SharpAlgebroid, T: SharpAlgebroid, e: G.Elem) -> G.Elem:
    """Image of an element of A-sharp in the transgressed tangent algebroid."""
    out: G.Elem = {}
    for (tag, u), psi in e.items():
        G.add_term(out, (tag, vector_field_section(A.alg.anchor(u))), psi)
    return T.reduce(out)


def prev_action(T: SharpAlgebroid, e: G.Elem, form: Form) -> Form:
    """Action of an element of the transgressed tangent algebroid on forms."""
    return T.act(T.reduce(e), form)


# -- the map from the transgressed Atiyah algebroid to operators ------------

class AtiyahAction:
    """Operators ``L^E`` on pr*ev*E of the transgressed Atiyah algebroid."""

    def __init__(self, n: int, r: int):
        self.n = n
        self.r = r
        self.alg = atiyah_algebroid(n, r)
        self.sharp = SharpAlgebroid(self.alg)
        self.ops = [atiyah_operator_of(self.alg, r, b) for b in self.sharp.basis]

    def apply(self, e: G.Elem, m: PrEvElement) -> PrEvElement:
        """``(omega + gamma eps) (x) D`` acts as ``omega D~ + gamma iota~_D``."""
        e = self.sharp.reduce(e)
        out = PrEvElement.zero(self.n, self.r)
        for (tag, u), psi in e.items():
            D = atiyah_operator_of(self.alg, self.r, u)
            img = d_tilde(D, m) if tag == ONE else iota_tilde(D, m)
            out = out + img.left_mul(psi)
        return out

    def operator(self, e: G.Elem) -> Callable[[PrEvElement], PrEvElement]:
        return lambda m: self.apply(e, m)


# -- marked Lie algebroids --------------------------------------------------

@dataclass
class MarkedLieAlgebroid:
    """A graded algebroid with a distinguished section ``marking``.

    ``sampler(rng)`` draws a homogeneous element; ``anchor_act(e, form)``
    gives the anchor of ``e`` acting on forms; ``quotient_key`` tells which
    generator keys span the marking line (dropped in the quotient).
    """

    algebroid: G.GradedAlgebroid
    marking: G.Elem
    mark_degree: int
    sampler: Callable
    anchor_act: Callable[[G.Elem, Form], Form]
    is_marking_key: Callable[[object], bool]
    format: Callable[[G.Elem], str]
    name: str = ""

    def quotient(self, e: G.Elem) -> G.Elem:
        return {k: v for k, v in e.items() if not self.is_marking_key(k)}


MARKING_STATEMENTS = {
    "marking-degree": "c is homogeneous of the marking degree",
    "central-left": "[c, a] = 0",
    "central-right": "[a, c] = 0",
    "anchor-kills-marking": "anchor(c) acts as 0 on forms",
    "quotient-bracket": "[a + psi c, b] = [a, b] modulo O c",
    "quotient-anchor": "anchor(a + psi c) = anchor(a) on forms",
}


def marking_checks(m: MarkedLieAlgebroid, max_degree: int = 2) -> Dict[str, Callable]:

    A = m.algebroid
    n = A.n
    c = A.reduce(m.marking)

    def form(rng):
        return sample_form(n, rng.randint(0, n), rng, max_degree)

    def c_degree(rng):
        parts = A.degree_parts(c)
        if c and list(parts) != [m.mark_degree]:
            return {"marking": m.format(c), "degrees": str(list(parts)), "expected": str(m.mark_degree)}
        return None

    def c_left(rng):
        a = m.sampler(rng)
        return mismatch(A.bracket(c, a), {}, m.format, a=m.format(a))

    def c_right(rng):
        a = m.sampler(rng)
        return mismatch(A.bracket(a, c), {}, m.format, a=m.format(a))

    def c_anchor(rng):
        w = form(rng)
        return mismatch(m.anchor_act(c, w), Form.zero(n), render, form=w)

    def c_qbracket(rng):
        a, b = m.sampler(rng), m.sampler(rng)
        shifted = G.add(a, G.left_mul(form(rng), c))
        return mismatch(m.quotient(A.bracket(shifted, b)), m.quotient(A.bracket(a, b)), m.format, a=m.format(a), b=m.format(b))

    def c_qanchor(rng):
        a = m.sampler(rng)
        w = form(rng)
        shifted = G.add(a, G.left_mul(form(rng), c))
        return mismatch(m.anchor_act(shifted, w), m.anchor_act(a, w), render, a=m.format(a), form=w)

    return {
        "marking-degree": c_degree,
        "central-left": c_left,
        "central-right": c_right,
        "anchor-kills-marking": c_anchor,
        "quotient-bracket": c_qbracket,
        "quotient-anchor": c_qanchor,
    }


def check_marked(m: MarkedLieAlgebroid, seed: int, samples: int, max_degree: int = 2, suite: str = "marking"):

    return [run_property(seed, suite, name, MARKING_STATEMENTS[name], samples, chk) for name, chk in marking_checks(m, max_degree).items()]


def sample_sharp(S: SharpAlgebroid, rng, max_degree: int = 2) -> G.Elem:
    """Homogeneous element of a transgressed Lie algebroid."""

    d = rng.randint(-1, S.n)
    out: G.Elem = {}
    for b in S.basis:
        G.add_term(out, (ONE, b), sample_form(S.n, d, rng, max_degree))
        G.add_term(out, (EPS, b), sample_form(S.n, d + 1, rng, max_degree))
    return out


def marked_sharp(S: SharpAlgebroid, marking: G.Elem, mark_degree: int, max_degree: int = 2, name: str = "") -> MarkedLieAlgebroid:
    """A transgressed algebroid with a chosen (possibly invalid) marking; the quotient drops its keys."""
    keys = set(S.reduce(marking))
    return MarkedLieAlgebroid(
        algebroid=S,
        marking=marking,
        mark_degree=mark_degree,
        sampler=lambda rng: sample_sharp(S, rng, max_degree),
        anchor_act=S.act,
        is_marking_key=lambda key: key in keys,
        format=S.format,
        name=name,
    )
