"""Functions on the odd path space and transgression of free modules.

A ``SuperFunc`` is ``even + odd * eps`` with ``eps`` of degree -1 and
``eps^2 = 0``.  The odd coefficient is written to the left of ``eps``; moving
``eps`` past a form of degree j costs ``(-1)^j``.  The differential is
``d`` on the form factors plus ``eps -> 1`` acting from the right, with the
sign fixed so that ``f + df*eps`` is a cycle for every function ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .symcore import ChartMismatch, Form, Poly, de_rham, wedge


def _sign(k: int) -> int:
    return -1 if k & 1 else 1


def _graded(a: Form) -> Iterable[Tuple[int, Form]]:
    return a.parts().items()


@dataclass(frozen=True)
class SuperFunc:
    even: Form
    odd: Form

    @classmethod
    def from_form(cls, a: Form) -> "SuperFunc":
        return cls(a, Form.zero(a.n))

    @classmethod
    def eps(cls, n: int, coeff: Form | None = None) -> "SuperFunc":
        """``coeff * eps``; plain ``eps`` when no coefficient is given."""
        return cls(Form.zero(n), coeff if coeff is not None else Form.const(n, 1))

    @property
    def n(self) -> int:
        return self.even.n

    def __add__(self, other: "SuperFunc") -> "SuperFunc":
        return SuperFunc(self.even + other.even, self.odd + other.odd)

    def __neg__(self) -> "SuperFunc":
        return SuperFunc(-self.even, -self.odd)

    def __sub__(self, other: "SuperFunc") -> "SuperFunc":
        return self + (-other)

    def __mul__(self, other: "SuperFunc") -> "SuperFunc":
        return super_mul(self, other)

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def degrees(self) -> Tuple[int, ...]:
        """Total degrees present (eps counts as -1)."""
        return tuple(sorted(set(self.even.degrees()) | {d - 1 for d in self.odd.degrees()}))

    def part(self, j: int) -> "SuperFunc":
        return SuperFunc(self.even.part(j), self.odd.part(j + 1))


def super_mul(a: SuperFunc, b: SuperFunc) -> SuperFunc:
    even = wedge(a.even, b.even)
    odd = wedge(a.even, b.odd)
    for k, b0 in _graded(b.even):
        odd = odd + wedge(a.odd, b0).scale(_sign(k))
    return SuperFunc(even, odd)


def super_diff(a: SuperFunc) -> SuperFunc:
    even = de_rham(a.even)
    for k, o in _graded(a.odd):
        even = even + o.scale(_sign(k))
    return SuperFunc(even, de_rham(a.odd))


def ev_pullback(f: Poly) -> SuperFunc:
    """The evaluation map f -> f + df*eps."""
    g = Form.function(f)
    return SuperFunc(g, de_rham(g))


def integrate(a: SuperFunc, omega: Form) -> Form:
    """Integration along the odd line of ``a (x) omega``.

    ``eps (x) omega`` goes to ``omega`` and ``1 (x) omega`` to ``d omega``,
    extended linearly over forms on the left.
    """
    if a.n != omega.n:
        raise ChartMismatch("chart dimensions differ")
    if not omega.is_homogeneous():
        raise ValueError("integrate expects a homogeneous form")
    return wedge(a.even, de_rham(omega)) + wedge(a.odd, omega)


@dataclass(frozen=True)
class PrEvElement:
    """Normal form ``sum_i one[i] (x) e_i + sum_i eps[i] eps (x) e_i``.

    The basis ``e_i`` of the free coefficient module is implicit; only its
    rank matters here.
    """

    one: Tuple[Form, ...]
    eps: Tuple[Form, ...]

    def __post_init__(self):
        if len(self.one) != len(self.eps):
            raise ValueError("one and eps parts must have the same rank")

    @classmethod
    def zero(cls, n: int, r: int) -> "PrEvElement":
        z = Form.zero(n)
        return cls((z,) * r, (z,) * r)

    @classmethod
    def basis_one(cls, n: int, r: int, i: int, coeff: Form | None = None) -> "PrEvElement":
        z = Form.zero(n)
        c = coeff if coeff is not None else Form.const(n, 1)
        return cls(tuple(c if j == i else z for j in range(r)), (z,) * r)

    @classmethod
    def basis_eps(cls, n: int, r: int, i: int, coeff: Form | None = None) -> "PrEvElement":
        z = Form.zero(n)
        c = coeff if coeff is not None else Form.const(n, 1)
        return cls((z,) * r, tuple(c if j == i else z for j in range(r)))

    @property
    def rank(self) -> int:
        return len(self.one)

    def __add__(self, other: "PrEvElement") -> "PrEvElement":
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        return PrEvElement(
            tuple(a + b for a, b in zip(self.one, other.one)),
            tuple(a + b for a, b in zip(self.eps, other.eps)),
        )

    def __neg__(self) -> "PrEvElement":
        return PrEvElement(tuple(-a for a in self.one), tuple(-a for a in self.eps))

    def __sub__(self, other: "PrEvElement") -> "PrEvElement":
        return self + (-other)

    def scale(self, c) -> "PrEvElement":
        return PrEvElement(tuple(a.scale(c) for a in self.one), tuple(a.scale(c) for a in self.eps))

    def left_mul(self, psi: Form) -> "PrEvElement":
        """Multiplication by a form on the left."""
        return PrEvElement(tuple(wedge(psi, a) for a in self.one), tuple(wedge(psi, a) for a in self.eps))

    def is_zero(self) -> bool:
        return not any(self.one) and not any(self.eps)

    def degrees(self) -> Tuple[int, ...]:
        ds = set()
        for a in self.one:
            ds.update(a.degrees())
        for a in self.eps:
            ds.update(d - 1 for d in a.degrees())
        return tuple(sorted(ds))

    def part(self, j: int) -> "PrEvElement":
        return PrEvElement(tuple(a.part(j) for a in self.one), tuple(a.part(j + 1) for a in self.eps))

    def parts(self) -> List[Tuple[int, "PrEvElement"]]:
        return [(j, self.part(j)) for j in self.degrees()]


def prev_diff(m: PrEvElement) -> PrEvElement:
    """Differential: d on coefficients and eps -> 1 with the Koszul sign."""
    one = [de_rham(a) for a in m.one]
    for i, a in enumerate(m.eps):
        for k, p in _graded(a):
            one[i] = one[i] + p.scale(_sign(k))
    return PrEvElement(tuple(one), tuple(de_rham(a) for a in m.eps))


def prev_normalize(raw: Sequence[Tuple[SuperFunc, Sequence[Poly]]], n: int, r: int) -> PrEvElement:
    """Reduce a sum of tensors ``A (x)_C (sum_i f_i e_i)`` to normal form.

    Uses ``eps (x) f e = f eps (x) e`` and ``1 (x) f e = f (x) e + df eps (x) e``.
    """
    out = PrEvElement.zero(n, r)
    one = list(out.one)
    eps = list(out.eps)
    for a, coeffs in raw:
        if len(coeffs) != r:
            raise ValueError(f"rank mismatch: expected {r} coefficients, got {len(coeffs)}")
        if a.n != n:
            raise ChartMismatch("chart dimensions differ")
        for i, f in enumerate(coeffs):
            if not f:
                continue
            ev = ev_pullback(f)
            # A (x) f e_i = (A * ev(f)) (x) e_i
            prod = super_mul(a, ev)
            one[i] = one[i] + prod.even
            eps[i] = eps[i] + prod.odd
    return PrEvElement(tuple(one), tuple(eps))


def prev_integrate(m: PrEvElement, basis_forms: Sequence[Form]) -> Form:
    """Integration on pr*ev* of a free module of forms with the given basis."""
    if len(basis_forms) != m.rank:
        raise ValueError("rank mismatch")
    out = Form.zero(basis_forms[0].n) if basis_forms else Form.zero(0)
    for one, eps, w in zip(m.one, m.eps, basis_forms):
        out = out + integrate(SuperFunc(one, eps), w)
    return out
