"""Brackets extended from generators by the graded Leibniz rule.

An element is a dict ``{key: Form}`` meaning ``sum coeff * key`` with the
form coefficient written on the left.  Keys are hashable generator labels;
a ``GradedAlgebroid`` subclass says what each generator's degree, anchor
action, differential and pairwise bracket are, and how to bring a raw sum
to normal form.  The bracket of ``psi*x`` and ``phi*y`` for homogeneous
coefficients is

    psi ^ s(x)(phi) * y
    + (-1)^{|x||phi|} psi ^ phi * [x, y]
    - (-1)^{(|psi|+|x|)(|phi|+|y|)} phi ^ s(y)(psi) * x

where ``s`` is the anchor acting on forms.
"""
from __future__ import annotations

from typing import Dict, Hashable, Tuple

from .symcore import Form, de_rham, wedge

Elem = Dict[Hashable, Form]


def sign(k: int) -> int:
    return -1 if k & 1 else 1


def add_term(acc: Elem, key: Hashable, coeff: Form) -> None:
    if not coeff:
        return
    prev = acc.get(key)
    s = coeff if prev is None else prev + coeff
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def add(*elems: Elem) -> Elem:
    out: Elem = {}
    for e in elems:
        for k, v in e.items():
            add_term(out, k, v)
    return out


def scale(e: Elem, c) -> Elem:
    out: Elem = {}
    for k, v in e.items():
        add_term(out, k, v.scale(c))
    return out


def neg(e: Elem) -> Elem:
    return scale(e, -1)


def sub(a: Elem, b: Elem) -> Elem:
    return add(a, neg(b))


def left_mul(psi: Form, e: Elem) -> Elem:
    out: Elem = {}
    for k, v in e.items():
        add_term(out, k, wedge(psi, v))
    return out


def is_zero(e: Elem) -> bool:
    return not any(e.values())


class GradedAlgebroid:
    """Generic bracket, differential and anchor action on graded generators.

    Subclasses implement ``key_degree``, ``generator_bracket``,
    ``generator_action``, ``generator_diff`` and ``reduce``.
    """

    n: int

    def __init__(self) -> None:
        self._bracket_cache: Dict[Tuple[Hashable, Hashable], Elem] = {}

    # -- generator data -------------------------------------------------
    def key_degree(self, key: Hashable) -> int:
        raise NotImplementedError

    def generator_bracket(self, x: Hashable, y: Hashable) -> Elem:
        raise NotImplementedError

    def generator_action(self, x: Hashable, form: Form) -> Form:
        raise NotImplementedError

    def generator_diff(self, x: Hashable) -> Elem:
        raise NotImplementedError

    def reduce(self, raw: Elem) -> Elem:
        raise NotImplementedError

    # -- derived operations ---------------------------------------------
    def _gen_bracket(self, x: Hashable, y: Hashable) -> Elem:
        key = (x, y)
        hit = self._bracket_cache.get(key)
        if hit is None:
            hit = self.generator_bracket(x, y)
            if len(self._bracket_cache) < 100000:
                self._bracket_cache[key] = hit
        return hit

    def degree_parts(self, e: Elem) -> Dict[int, Elem]:
        out: Dict[int, Elem] = {}
        for k, v in e.items():
            dk = self.key_degree(k)
            for j, p in v.parts().items():
                add_term(out.setdefault(j + dk, {}), k, p)
        return {d: v for d, v in sorted(out.items()) if v}

    def degree(self, e: Elem) -> int:
        parts = self.degree_parts(e)
        if len(parts) > 1:
            raise ValueError(f"element is not homogeneous (degrees {sorted(parts)})")
        return next(iter(parts), 0)

    def bracket_raw(self, a: Elem, b: Elem) -> Elem:
        out: Elem = {}
        for x, psi_all in a.items():
            dx = self.key_degree(x)
            psi_parts = psi_all.parts()
            for y, phi_all in b.items():
                dy = self.key_degree(y)
                phi_parts = phi_all.parts()
                gen = self._gen_bracket(x, y)
                for i, psi in psi_parts.items():
                    # s(y)(psi) does not depend on phi
                    s_y_psi = self.generator_action(y, psi)
                    for j, phi in phi_parts.items():
                        add_term(out, y, wedge(psi, self.generator_action(x, phi)))
                        if gen:
                            pp = wedge(psi, phi)
                            if pp:
                                s = sign(dx * j)
                                for k, v in gen.items():
                                    add_term(out, k, wedge(pp, v).scale(s))
                        if s_y_psi:
                            s = -sign((i + dx) * (j + dy))
                            add_term(out, x, wedge(phi, s_y_psi).scale(s))
        return out

    def bracket(self, a: Elem, b: Elem) -> Elem:
        return self.reduce(self.bracket_raw(a, b))

    def diff_raw(self, a: Elem) -> Elem:
        out: Elem = {}
        for x, psi_all in a.items():
            add_term(out, x, de_rham(psi_all))
            dgen = self.generator_diff(x)
            if not dgen:
                continue
            for i, psi in psi_all.parts().items():
                for k, v in dgen.items():
                    add_term(out, k, wedge(psi, v).scale(sign(i)))
        return out

    def diff(self, a: Elem) -> Elem:
        return self.reduce(self.diff_raw(a))

    def act(self, a: Elem, form: Form) -> Form:
        """The anchor of ``a`` acting on a form as a derivation."""
        out = Form.zero(form.n)
        for x, psi in a.items():
            out = out + wedge(psi, self.generator_action(x, form))
        return out
