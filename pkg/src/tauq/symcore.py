"""Exact polynomial coefficients and Cartan calculus on a coordinate chart.

A chart is R^n with coordinates x_0..x_{n-1}.  Functions are polynomials with
rational coefficients, differential forms are finite sums ``f dx_I`` with
strictly increasing index tuples ``I`` and vector fields are n-tuples of
polynomials.  Everything is immutable and compared exactly.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
Monomial = Tuple[int, ...]
Index = Tuple[int, ...]


class ChartMismatch(ValueError):
    """Operands live on charts of different dimension."""


def _norm(c: Scalar) -> Scalar:
    # integral Fractions are stored as ints so the common path stays on int arithmetic
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def as_scalar(c) -> Scalar:
    if isinstance(c, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact scalar: {c!r}")


def merge_sign(left: Sequence[int], right: Sequence[int]) -> int:
    """Sign of the permutation sorting ``left + right`` (both increasing).

    Returns 0 when the two index sets overlap.  Every sign in the exterior
    calculus goes through this routine.
    """
    inversions = 0
    for i in left:
        for j in right:
            if i == j:
                return 0
            if i > j:
                inversions += 1
    return -1 if inversions & 1 else 1


def _check(a_n: int, b_n: int) -> None:
    if a_n != b_n:
        raise ChartMismatch(f"chart dimensions differ: {a_n} != {b_n}")


class Poly:
    """Polynomial in ``n`` variables with exact rational coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, Scalar] | None = None):
        self.n = n
        clean: Dict[Monomial, Scalar] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != n:
                    raise ValueError(f"monomial {mono} has wrong length for n={n}")
                c = as_scalar(c)
                if c:
                    clean[tuple(mono)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: Dict[Monomial, Scalar]) -> "Poly":
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, n: int, c: Scalar = 1) -> "Poly":
        c = as_scalar(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        mono = [0] * n
        mono[i] = 1
        return cls._raw(n, {tuple(mono): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.n, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            _check(self.n, other.n)
            return other
        return Poly.const(self.n, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = _norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "Poly":
        c = as_scalar(c)
        if not c:
            return Poly.zero(self.n)
        return Poly._raw(self.n, {m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        _check(self.n, other.n)
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                out[m] = v
        return Poly._raw(self.n, {m: _norm(v) for m, v in out.items() if v})

    __rmul__ = __mul__

    def diff(self, i: int) -> "Poly":
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Poly._raw(self.n, out)

    def __repr__(self) -> str:
        from .textfmt import format_poly

        return f"Poly({format_poly(self)!r})"


class Form:
    """Inhomogeneous differential form: map from increasing index tuple to Poly."""

    __slots__ = ("n", "comps", "_hash")

    def __init__(self, n: int, comps: Mapping[Index, Poly] | None = None):
        self.n = n
        clean: Dict[Index, Poly] = {}
        if comps:
            for idx, p in comps.items():
                idx = tuple(idx)
                if list(idx) != sorted(set(idx)) or any(i < 0 or i >= n for i in idx):
                    raise ValueError(f"basis index {idx} is not strictly increasing in range(0, {n})")
                if not isinstance(p, Poly):
                    p = Poly.const(n, p)
                _check(n, p.n)
                if p:
                    clean[idx] = p
        self.comps = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, comps: Dict[Index, Poly]) -> "Form":
        f = object.__new__(cls)
        f.n = n
        f.comps = comps
        f._hash = None
        return f

    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls._raw(n, {})

    @classmethod
    def function(cls, f: Poly) -> "Form":
        return cls._raw(f.n, {(): f} if f else {})

    @classmethod
    def const(cls, n: int, c: Scalar = 1) -> "Form":
        return cls.function(Poly.const(n, c))

    @classmethod
    def basis(cls, n: int, idx: Iterable[int]) -> "Form":
        """The form dx_I for increasing ``idx`` (a sign is applied otherwise)."""
        idx = list(idx)
        out = cls.const(n, 1)
        for i in idx:
            out = wedge(out, cls._raw(n, {(i,): Poly.const(n, 1)}))
        return out

    @classmethod
    def dx(cls, n: int, i: int) -> "Form":
        return cls._raw(n, {(i,): Poly.const(n, 1)})

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self) -> bool:
        return bool(self.comps)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({len(i) for i in self.comps}))

    def degree(self) -> int:
        """Degree of a homogeneous form; raises for inhomogeneous ones.

        The zero form reports degree 0.
        """
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"form is not homogeneous (degrees {degs})")
        return degs[0] if degs else 0

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def parts(self) -> Dict[int, "Form"]:
        out: Dict[int, Dict[Index, Poly]] = {}
        for idx, p in self.comps.items():
            out.setdefault(len(idx), {})[idx] = p
        return {k: Form._raw(self.n, v) for k, v in sorted(out.items())}

    def part(self, k: int) -> "Form":
        return Form._raw(self.n, {i: p for i, p in self.comps.items() if len(i) == k})

    def function_part(self) -> Poly:
        return self.comps.get((), Poly.zero(self.n))

    def __eq__(self, other) -> bool:
        if isinstance(other, Form):
            return self.n == other.n and self.comps == other.comps
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.comps.items())))
        return self._hash

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        _check(self.n, other.n)
        if not other.comps:
            return self
        if not self.comps:
            return other
        out = dict(self.comps)
        for i, p in other.comps.items():
            q = out.get(i)
            s = p if q is None else q + p
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return Form._raw(self.n, out)

    def __neg__(self) -> "Form":
        return Form._raw(self.n, {i: -p for i, p in self.comps.items()})

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Form":
        """Multiply by a scalar or by a function (Poly)."""
        if isinstance(c, Poly):
            _check(self.n, c.n)
            if not c:
                return Form.zero(self.n)
            return Form._raw(self.n, {i: q for i, p in self.comps.items() if (q := p * c)})
        c = as_scalar(c)
        if not c:
            return Form.zero(self.n)
        if c == 1:
            return self
        return Form._raw(self.n, {i: p.scale(c) for i, p in self.comps.items()})

    def __mul__(self, other) -> "Form":
        if isinstance(other, Form):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "Form":
        return self.scale(other)

    def __repr__(self) -> str:
        from .textfmt import format_form

        return f"Form({format_form(self)!r})"


class VectorField:
    """Vector field sum_i components[i] * d/dx_i."""

    __slots__ = ("n", "components", "_hash")

    def __init__(self, components: Sequence[Poly], n: int | None = None):
        comps = tuple(components)
        if n is None:
            if not comps:
                raise ValueError("chart dimension required for an empty vector field")
            n = comps[0].n
        if len(comps) != n:
            raise ValueError(f"vector field needs {n} components, got {len(comps)}")
        for c in comps:
            _check(n, c.n)
        self.n = n
        self.components = comps
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls([Poly.zero(n)] * n, n)

    @classmethod
    def coord(cls, n: int, i: int) -> "VectorField":
        return cls([Poly.const(n, 1 if j == i else 0) for j in range(n)], n)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __eq__(self, other) -> bool:
        if isinstance(other, VectorField):
            return self.n == other.n and self.components == other.components
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.components))
        return self._hash

    def __add__(self, other: "VectorField") -> "VectorField":
        _check(self.n, other.n)
        return VectorField([a + b for a, b in zip(self.components, other.components)], self.n)

    def __neg__(self) -> "VectorField":
        return VectorField([-a for a in self.components], self.n)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def scale(self, f) -> "VectorField":
        return VectorField([a * f for a in self.components], self.n)

    def __call__(self, f: Poly) -> Poly:
        """Apply the vector field as a derivation of functions."""
        _check(self.n, f.n)
        out = Poly.zero(self.n)
        for i, c in enumerate(self.components):
            if c:
                out = out + c * f.diff(i)
        return out

    def __repr__(self) -> str:
        from .textfmt import format_vector_field

        return f"VectorField({format_vector_field(self)!r})"


def _wedge_basis(i: Index, j: Index) -> Tuple[int, Index]:
    s = merge_sign(i, j)
    if not s:
        return 0, ()
    return s, tuple(sorted(i + j))


def wedge(a: Form, b: Form) -> Form:
    _check(a.n, b.n)
    if not a.comps or not b.comps:
        return Form.zero(a.n)
    out: Dict[Index, Poly] = {}
    for i, p in a.comps.items():
        for j, q in b.comps.items():
            s, k = _wedge_basis(i, j)
            if not s:
                continue
            term = p * q
            if s < 0:
                term = -term
            prev = out.get(k)
            out[k] = term if prev is None else prev + term
    return Form._raw(a.n, {k: p for k, p in out.items() if p})


def de_rham(a: Form) -> Form:
    n = a.n
    out: Dict[Index, Poly] = {}
    for idx, p in a.comps.items():
        for i in range(n):
            if i in idx:
                continue
            dp = p.diff(i)
            if not dp:
                continue
            s, k = _wedge_basis((i,), idx)
            term = dp if s > 0 else -dp
            prev = out.get(k)
            out[k] = term if prev is None else prev + term
    return Form._raw(n, {k: p for k, p in out.items() if p})


def interior(xi: VectorField, a: Form) -> Form:
    """Contraction iota_xi, a graded derivation of degree -1."""
    _check(xi.n, a.n)
    out: Dict[Index, Poly] = {}
    comps = xi.components
    for idx, p in a.comps.items():
        for pos, i in enumerate(idx):
            c = comps[i]
            if not c:
                continue
            k = idx[:pos] + idx[pos + 1:]
            term = c * p
            if pos & 1:
                term = -term
            prev = out.get(k)
            out[k] = term if prev is None else prev + term
    return Form._raw(a.n, {k: p for k, p in out.items() if p})


def interior_multi(fields: Sequence[VectorField], a: Form) -> Form:
    """iota_{v_1 ^ ... ^ v_m} a, i.e. a(v_1, ..., v_m, -)."""
    for v in fields:
        a = interior(v, a)
    return a


def lie_derivative(xi: VectorField, a: Form) -> Form:
    """L_xi = d iota_xi + iota_xi d."""
    return de_rham(interior(xi, a)) + interior(xi, de_rham(a))


def vf_bracket(xi: VectorField, eta: VectorField) -> VectorField:
    _check(xi.n, eta.n)
    return VectorField([xi(e) - eta(x) for x, e in zip(xi.components, eta.components)], xi.n)


def function_form(f: Poly) -> Form:
    return Form.function(f)


def top_degree_forms(n: int, k: int) -> Iterator[Index]:
    """All increasing index tuples of length k in range(n)."""
    from itertools import combinations

    return combinations(range(n), k)


def form_from_contractions(n: int, degree: int, contractions: Sequence[Form]) -> Form:
    """Candidate ``degree``-form w with iota_{d/dx_i} w = contractions[i].

    Uses w = (1/degree) sum_i dx_i ^ contractions[i]; callers must confirm the
    contractions are consistent.
    """
    if degree == 0:
        return Form.zero(n)
    out = Form.zero(n)
    for i, c in enumerate(contractions):
        out = out + wedge(Form.dx(n, i), c)
    return out.scale(Fraction(1, degree))
