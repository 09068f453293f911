"""Higher Courant algebroids on a chart.

``Q = Omega^k (+) F`` where ``F`` is a free Lie algebroid, ``k`` is the
dimension of the structure (the pairing takes values in ``Omega^{k-1}``)
and a twisting ``(k+2)``-form ``H`` may be present.  For ``(alpha, u)`` and
``(beta, v)`` with anchors ``X = rho(u)``, ``Y = rho(v)``::

    {(alpha, u), (beta, v)} = ([u, v], L_X beta - i_Y d alpha + i_Y i_X H)
    <(alpha, u), (beta, v)> = i_X beta + i_Y alpha + G(u, v)
    pi(alpha, u) = X,  pi^dagger(alpha) = (alpha, 0)

``G`` is a constant invariant pairing on ``F`` and is only allowed on a
zero-dimensional chart (quadratic Lie algebras).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .liealgebroid import (
    LieAlgebroidStructure,
    SO3_CONSTANTS,
    SO3_KILLING,
    lie_algebra,
    section_add,
    section_scale,
    tangent_algebroid,
)
from .report import PropertyResult, mismatch, run_property
from .sampling import sample_form, sample_poly, sample_section
from .symcore import Form, Poly, VectorField, de_rham, interior, lie_derivative, vf_bracket, wedge
from .textfmt import render

STANDARD = "standard"
TWISTED = "twisted"
QUADRATIC = "quadratic"
COMMUTATIVE = "commutative"
FAMILIES = (STANDARD, TWISTED, QUADRATIC, COMMUTATIVE)


@dataclass(frozen=True)
class CourantElement:
    form: Form
    sec: Tuple[Poly, ...]

    def __add__(self, other: "CourantElement") -> "CourantElement":
        return CourantElement(self.form + other.form, section_add(self.sec, other.sec))

    def __neg__(self) -> "CourantElement":
        return CourantElement(-self.form, tuple(-a for a in self.sec))

    def __sub__(self, other: "CourantElement") -> "CourantElement":
        return self + (-other)

    def scale(self, f) -> "CourantElement":
        return CourantElement(self.form.scale(f), section_scale(self.sec, f))

    def is_zero(self) -> bool:
        return self.form.is_zero() and not any(self.sec)

    def __str__(self) -> str:
        return f"({render(self.form)}; {render(list(self.sec))})"


class CourantError(ValueError):
    pass


class CourantStructure:
    def __init__(
        self,
        n: int,
        dim: int,
        F: LieAlgebroidStructure,
        H: Optional[Form] = None,
        gram: Optional[Sequence[Sequence[Poly]]] = None,
        family: str = STANDARD,
        check: bool = True,
    ):
        if dim < 1:
            raise CourantError("the dimension of a Courant algebroid must be at least 1")
        if F.n != n:
            raise CourantError("algebroid lives on a different chart")
        self.n = n
        self.dim = dim
        self.F = F
        self.rank = F.rank
        self.family = family
        self.H = H if H is not None else Form.zero(n)
        if self.H.n != n:
            raise CourantError("twisting form lives on a different chart")
        if not self.H.is_zero() and self.H.degrees() != (dim + 2,):
            raise CourantError(f"twisting form must have degree {dim + 2}")
        self.gram = None
        if gram is not None:
            self.gram = tuple(tuple(x if isinstance(x, Poly) else Poly.const(n, x) for x in row) for row in gram)
            if n != 0 and any(any(row) for row in self.gram):
                raise CourantError("a pairing on the algebroid is only supported on a zero-dimensional chart")
        if check:
            self.validate()

    # -- validation ------------------------------------------------------
    def validate(self) -> None:
        if not de_rham(self.H).is_zero():
            raise CourantError("twisting form is not closed")
        if self.gram is not None:
            r = self.rank
            for i in range(r):
                for j in range(r):
                    if self.gram[i][j] != self.gram[j][i]:
                        raise CourantError("pairing matrix is not symmetric")
            # invariance on basis: G([a,b],c) + G(b,[a,c]) = 0
            for a in range(r):
                for b in range(r):
                    for c in range(r):
                        ab = self.F.bracket(self.F.basis(a), self.F.basis(b))
                        ac = self.F.bracket(self.F.basis(a), self.F.basis(c))
                        t = self._gram(ab, self.F.basis(c)) + self._gram(self.F.basis(b), ac)
                        if t:
                            raise CourantError("pairing matrix is not invariant")

    # -- structure maps --------------------------------------------------
    def zero(self) -> CourantElement:
        return CourantElement(Form.zero(self.n), self.F.zero())

    def basis(self, i: int) -> CourantElement:
        """The i-th basis element of the chosen complement F."""
        return CourantElement(Form.zero(self.n), self.F.basis(i))

    def complement_basis(self) -> List[CourantElement]:
        return [self.basis(i) for i in range(self.rank)]

    def element(self, form: Form, sec: Sequence[Poly]) -> CourantElement:
        return CourantElement(form, tuple(sec))

    def from_vector_field(self, v: VectorField) -> CourantElement:
        if self.F.anchors != tangent_algebroid(self.n).anchors:
            raise CourantError("vector fields embed only in exact structures")
        return CourantElement(Form.zero(self.n), tuple(v.components))

    def anchor(self, q: CourantElement) -> VectorField:
        return self.F.anchor(q.sec)

    def coanchor(self, alpha: Form) -> CourantElement:
        if not alpha.is_zero() and alpha.degrees() != (self.dim,):
            raise CourantError(f"coanchor expects a {self.dim}-form")
        return CourantElement(alpha, self.F.zero())

    def _gram(self, u, v) -> Poly:
        out = Poly.zero(self.n)
        if self.gram is None:
            return out
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b and self.gram[i][j]:
                    out = out + a * b * self.gram[i][j]
        return out

    def pairing(self, q1: CourantElement, q2: CourantElement) -> Form:
        x = self.anchor(q1)
        y = self.anchor(q2)
        out = interior(x, q2.form) + interior(y, q1.form)
        g = self._gram(q1.sec, q2.sec)
        if g:
            out = out + Form.function(g)
        return out

    def dorfman(self, q1: CourantElement, q2: CourantElement) -> CourantElement:
        x = self.anchor(q1)
        y = self.anchor(q2)
        form = lie_derivative(x, q2.form) - interior(y, de_rham(q1.form))
        if not self.H.is_zero():
            form = form + interior(y, interior(x, self.H))
        return CourantElement(form, self.F.bracket(q1.sec, q2.sec))

    def describe(self) -> Dict[str, str]:
        out = {"family": self.family, "chart_dim": str(self.n), "dimension": str(self.dim), "algebroid": self.F.name}
        if not self.H.is_zero():
            out["twist"] = render(self.H)
        return out


# -- families ---------------------------------------------------------------

def standard(n: int, dim: int = 1) -> CourantStructure:
    return CourantStructure(n, dim, tangent_algebroid(n), family=STANDARD)


def twisted(n: int, dim: int, B: Form, check: bool = True) -> CourantStructure:
    """Exact structure twisted by ``H = dB``."""
    if not B.is_zero() and B.degrees() != (dim + 1,):
        raise CourantError(f"twist potential must be a {dim + 1}-form")
    return CourantStructure(n, dim, tangent_algebroid(n), H=de_rham(B), family=TWISTED, check=check)


def twisted_by(n: int, dim: int, H: Form, check: bool = True) -> CourantStructure:
    """Exact structure twisted by an explicit ``(dim+2)``-form (may be non-closed when ``check`` is off)."""
    return CourantStructure(n, dim, tangent_algebroid(n), H=H, family=TWISTED, check=check)


def quadratic(constants=None, gram=None) -> CourantStructure:
    """Quadratic Lie algebra on a point; defaults to so(3) with its Killing form."""
    constants = SO3_CONSTANTS if constants is None else constants
    gram = SO3_KILLING if gram is None else gram
    g = lie_algebra(constants, n=0, name="so3" if constants is SO3_CONSTANTS else "lie-algebra")
    G = [[Poly.const(0, c) for c in row] for row in gram]
    return CourantStructure(0, 1, g, gram=G, family=QUADRATIC)


def commutative(n: int, dim: int) -> CourantStructure:
    """``Omega^dim`` with zero bracket, anchor and pairing."""
    F = LieAlgebroidStructure(n, [], [], name="zero")
    return CourantStructure(n, dim, F, family=COMMUTATIVE)


def associated_lie(Q: CourantStructure) -> LieAlgebroidStructure:
    """The Lie algebroid on the cokernel of the coanchor (the complement F)."""
    return Q.F


# -- sampling ---------------------------------------------------------------

def sample_courant(Q: CourantStructure, rng, max_degree: int = 2) -> CourantElement:
    return CourantElement(sample_form(Q.n, Q.dim, rng, max_degree), sample_section(Q.n, Q.rank, rng, max_degree))


# -- axioms -----------------------------------------------------------------

AXIOMS: List[Tuple[str, str]] = [
    ("complex", "pi(pi^dagger(alpha)) = 0"),
    ("leibniz", "{q1, f q2} = f {q1, q2} + pi(q1)(f) q2"),
    ("ip-invariance", "<{q,q1},q2> + <q1,{q,q2}> = L_pi(q) <q1,q2>"),
    ("ip-jacobi", "i_pi(q) <q1,q2> = -i_pi(q1) <q,q2> - i_pi(q2) <q,q1>"),
    ("forms-left-ideal", "{q, pi^dagger(alpha)} = pi^dagger(L_pi(q) alpha)"),
    ("adjunction", "<q, pi^dagger(alpha)> = i_pi(q) alpha"),
    ("symmetrizer", "{q1,q2} + {q2,q1} = pi^dagger(d<q1,q2>)"),
    ("bracket-jacobi", "{q,{q1,q2}} = {{q,q1},q2} + {q1,{q,q2}}"),
    ("anchor-morphism", "pi({q1,q2}) = [pi(q1), pi(q2)]"),
]


def axiom_checks(Q: CourantStructure, max_degree: int = 2) -> Dict[str, Callable]:
    n = Q.n

    def triple(rng):
        return (
            sample_courant(Q, rng, max_degree),
            sample_courant(Q, rng, max_degree),
            sample_courant(Q, rng, max_degree),
        )

    def c_complex(rng):
        a = sample_form(n, Q.dim, rng, max_degree)
        return mismatch(Q.anchor(Q.coanchor(a)), VectorField.zero(n), render, alpha=render(a))

    def c_leibniz(rng):
        q, q1, _ = triple(rng)
        f = sample_poly(n, rng, max_degree)
        lhs = Q.dorfman(q, q1.scale(f))
        rhs = Q.dorfman(q, q1).scale(f) + q1.scale(Q.anchor(q)(f))
        return mismatch(lhs, rhs, str, q1=str(q), q2=str(q1), f=render(f))

    def c_inv(rng):
        q, q1, q2 = triple(rng)
        lhs = Q.pairing(Q.dorfman(q, q1), q2) + Q.pairing(q1, Q.dorfman(q, q2))
        rhs = lie_derivative(Q.anchor(q), Q.pairing(q1, q2))
        return mismatch(lhs, rhs, render, q=str(q), q1=str(q1), q2=str(q2))

    def c_ipjac(rng):
        q, q1, q2 = triple(rng)
        lhs = interior(Q.anchor(q), Q.pairing(q1, q2))
        rhs = -interior(Q.anchor(q1), Q.pairing(q, q2)) - interior(Q.anchor(q2), Q.pairing(q, q1))
        return mismatch(lhs, rhs, render, q=str(q), q1=str(q1), q2=str(q2))

    def c_ideal(rng):
        q = sample_courant(Q, rng, max_degree)
        a = sample_form(n, Q.dim, rng, max_degree)
        lhs = Q.dorfman(q, Q.coanchor(a))
        rhs = Q.coanchor(lie_derivative(Q.anchor(q), a))
        return mismatch(lhs, rhs, str, q=str(q), alpha=render(a))

    def c_adj(rng):
        q = sample_courant(Q, rng, max_degree)
        a = sample_form(n, Q.dim, rng, max_degree)
        return mismatch(Q.pairing(q, Q.coanchor(a)), interior(Q.anchor(q), a), render, q=str(q), alpha=render(a))

    def c_sym(rng):
        q1, q2, _ = triple(rng)
        lhs = Q.dorfman(q1, q2) + Q.dorfman(q2, q1)
        rhs = Q.coanchor(de_rham(Q.pairing(q1, q2)))
        return mismatch(lhs, rhs, str, q1=str(q1), q2=str(q2))

    def c_jac(rng):
        q, q1, q2 = triple(rng)
        lhs = Q.dorfman(q, Q.dorfman(q1, q2))
        rhs = Q.dorfman(Q.dorfman(q, q1), q2) + Q.dorfman(q1, Q.dorfman(q, q2))
        return mismatch(lhs, rhs, str, q=str(q), q1=str(q1), q2=str(q2))

    def c_anchor(rng):
        q1, q2, _ = triple(rng)
        lhs = Q.anchor(Q.dorfman(q1, q2))
        rhs = vf_bracket(Q.anchor(q1), Q.anchor(q2))
        return mismatch(lhs, rhs, render, q1=str(q1), q2=str(q2))

    return {
        "complex": c_complex,
        "leibniz": c_leibniz,
        "ip-invariance": c_inv,
        "ip-jacobi": c_ipjac,
        "forms-left-ideal": c_ideal,
        "adjunction": c_adj,
        "symmetrizer": c_sym,
        "bracket-jacobi": c_jac,
        "anchor-morphism": c_anchor,
    }


def verify_axioms(Q: CourantStructure, seed: int, samples: int, max_degree: int = 2, suite: str = "courant-axioms") -> List[PropertyResult]:
    checks = axiom_checks(Q, max_degree)
    return [run_property(seed, suite, name, stmt, samples, checks[name]) for name, stmt in AXIOMS]


# -- connections ------------------------------------------------------------

def _require_exact(Q: CourantStructure) -> None:
    if Q.family not in (STANDARD, TWISTED):
        raise CourantError("connections are defined for exact structures only")


def alternation(n: int, degree: int, columns: Sequence[Form]) -> Form:
    """``(1/degree) sum_i dx_i ^ columns[i]``; inverse of contracting with d/dx_i."""
    out = Form.zero(n)
    for i, c in enumerate(columns):
        out = out + wedge(Form.dx(n, i), c)
    return out.scale(Fraction(1, degree))


@dataclass(frozen=True)
class Connection:
    """A splitting ``d/dx_i -> (columns[i], d/dx_i)`` of an exact structure."""

    Q: CourantStructure
    columns: Tuple[Form, ...]

    def __call__(self, v: VectorField) -> CourantElement:
        form = Form.zero(self.Q.n)
        for f, c in zip(v.components, self.columns):
            if f:
                form = form + c.scale(f)
        return CourantElement(form, tuple(v.components))

    def column(self, i: int) -> CourantElement:
        return CourantElement(self.columns[i], self.Q.F.basis(i))

    def isotropy_defects(self) -> List[Tuple[int, int, Form]]:
        out = []
        for i in range(self.Q.n):
            for j in range(i, self.Q.n):
                p = self.Q.pairing(self.column(i), self.column(j))
                if p:
                    out.append((i, j, p))
        return out

    def is_isotropic(self) -> bool:
        return not self.isotropy_defects()

    def offset(self) -> Form:
        """The ``(k+1)``-form w with ``self = canonical + w``."""
        n, k = self.Q.n, self.Q.dim
        w = alternation(n, k + 1, self.columns)
        for i in range(n):
            if interior(VectorField.coord(n, i), w) != self.columns[i]:
                raise CourantError("splitting is not a connection: its columns do not come from a form")
        return w

    def act(self, omega: Form) -> "Connection":
        return torsor_act(self, omega)


def canonical_connection(Q: CourantStructure) -> Connection:
    _require_exact(Q)
    return Connection(Q, tuple(Form.zero(Q.n) for _ in range(Q.n)))


def splitting(Q: CourantStructure, columns: Sequence[Form]) -> Connection:
    """An arbitrary section of the anchor (not necessarily isotropic)."""
    _require_exact(Q)
    cols = tuple(columns)
    if len(cols) != Q.n:
        raise CourantError(f"a splitting needs {Q.n} columns")
    for c in cols:
        if not c.is_zero() and c.degrees() != (Q.dim,):
            raise CourantError(f"splitting columns must be {Q.dim}-forms")
    return Connection(Q, cols)


def isotropic_from_splitting(s: Connection) -> Connection:
    """Correct a splitting by the coanchor so that it becomes isotropic.

    Each column is replaced by the contraction of the alternation of all
    columns.  For one-dimensional structures this equals adding
    ``phi(xi)`` with ``i_eta phi(xi) = -1/2 <s(xi), s(eta)>``.
    """
    Q = s.Q
    _require_exact(Q)
    n = Q.n
    A = alternation(n, Q.dim + 1, s.columns)
    out = Connection(Q, tuple(interior(VectorField.coord(n, i), A) for i in range(n)))
    if not out.is_isotropic():
        raise CourantError("isotropic correction failed")
    return out


def half_pairing_correction(s: Connection) -> Tuple[Form, ...]:
    """For dimension 1: the 1-forms phi(d_i) with ``i_{d_j} phi(d_i) = -1/2 <s d_i, s d_j>``."""
    Q = s.Q
    if Q.dim != 1:
        raise CourantError("the pointwise half-pairing correction is a 1-form only in dimension 1")
    n = Q.n
    out = []
    for i in range(n):
        comps = {}
        for j in range(n):
            p = Q.pairing(s.column(i), s.column(j)).function_part()
            comps[(j,)] = p.scale(Fraction(-1, 2))
        out.append(Form(n, comps))
    return tuple(out)


def torsor_act(nabla: Connection, omega: Form) -> Connection:
    Q = nabla.Q
    if not omega.is_zero() and omega.degrees() != (Q.dim + 1,):
        raise CourantError(f"torsor action needs a {Q.dim + 1}-form")
    n = Q.n
    return Connection(Q, tuple(c + interior(VectorField.coord(n, i), omega) for i, c in enumerate(nabla.columns)))


def connection_difference(a: Connection, b: Connection) -> Form:
    return a.offset() - b.offset()


def curvature_components(nabla: Connection) -> Dict[Tuple[int, int], Form]:
    Q = nabla.Q
    n = Q.n
    out = {}
    for i in range(n):
        for j in range(n):
            br = Q.dorfman(nabla.column(i), nabla.column(j))
            # coordinate fields commute, so nabla([d_i, d_j]) = 0
            if any(br.sec):
                raise CourantError("bracket of connection columns has a non-zero anchor part")
            out[(i, j)] = br.form
    return out


def curvature(nabla: Connection) -> Form:
    """The ``(k+2)``-form C with ``i_{d_j} i_{d_i} C = c(nabla)(d_i, d_j)``."""
    Q = nabla.Q
    n, k = Q.n, Q.dim
    comps = curvature_components(nabla)
    C = Form.zero(n)
    for (i, j), c in comps.items():
        C = C + wedge(wedge(Form.dx(n, i), Form.dx(n, j)), c)
    C = C.scale(Fraction(1, (k + 1) * (k + 2)))
    for (i, j), c in comps.items():
        got = interior(VectorField.coord(n, j), interior(VectorField.coord(n, i), C))
        if got != c:
            raise CourantError(f"curvature is not totally skew-symmetric at ({i}, {j})")
    if not de_rham(C).is_zero():
        raise CourantError("curvature form is not closed")
    return C


# -- morphisms --------------------------------------------------------------

class CourantMorphism:
    """O_X-linear map fixing the coanchor image and sending basis elements as given."""

    def __init__(self, source: CourantStructure, target: CourantStructure, images: Sequence[CourantElement]):
        if source.n != target.n or source.dim != target.dim:
            raise CourantError("morphisms need structures of equal chart and dimension")
        if len(images) != source.rank:
            raise CourantError("one image per basis element is required")
        self.source = source
        self.target = target
        self.images = tuple(images)
        for i, img in enumerate(self.images):
            if target.anchor(img) != source.anchor(source.basis(i)):
                raise CourantError(f"map does not commute with the anchors on basis element {i}")

    def __call__(self, q: CourantElement) -> CourantElement:
        out = CourantElement(q.form, self.target.F.zero())
        for f, img in zip(q.sec, self.images):
            if f:
                out = out + img.scale(f)
        return out

    def checks(self, max_degree: int = 2) -> Dict[str, Callable]:
        S, T = self.source, self.target

        def c_bracket(rng):
            q1, q2 = sample_courant(S, rng, max_degree), sample_courant(S, rng, max_degree)
            return mismatch(self(S.dorfman(q1, q2)), T.dorfman(self(q1), self(q2)), str, q1=str(q1), q2=str(q2))

        def c_pairing(rng):
            q1, q2 = sample_courant(S, rng, max_degree), sample_courant(S, rng, max_degree)
            return mismatch(S.pairing(q1, q2), T.pairing(self(q1), self(q2)), render, q1=str(q1), q2=str(q2))

        def c_anchor(rng):
            q = sample_courant(S, rng, max_degree)
            return mismatch(S.anchor(q), T.anchor(self(q)), render, q=str(q))

        return {"morphism-bracket": c_bracket, "morphism-pairing": c_pairing, "morphism-anchor": c_anchor}


def identity_morphism(Q: CourantStructure) -> CourantMorphism:
    return CourantMorphism(Q, Q, Q.complement_basis())


def resplitting(n: int, dim: int, B: Form, H: Form | None = None) -> CourantMorphism:
    """``(alpha, xi) -> (alpha + i_xi B, xi)`` from the structure twisted by ``H + dB`` to the one twisted by ``H``."""
    H = H if H is not None else Form.zero(n)
    src = CourantStructure(n, dim, tangent_algebroid(n), H=H + de_rham(B), family=TWISTED)
    tgt = CourantStructure(n, dim, tangent_algebroid(n), H=H, family=TWISTED)
    imgs = [CourantElement(interior(VectorField.coord(n, i), B), tgt.F.basis(i)) for i in range(n)]
    return CourantMorphism(src, tgt, imgs)
