"""Text form of polynomials, differential forms and vector fields.

Grammar (whitespace is insignificant except as a separator)::

    form     := ["-"] term (("+" | "-") term)*  |  "0"
    term     := coeff_mono [basis]  |  basis
    coeff_mono := factor ("*" factor)*
    factor   := INT ["/" INT]  |  VAR ["^" INT]
    basis    := DVAR ("^" DVAR)*
    vfield   := "(" [form ("," form)*] ")"

``VAR`` is ``x``, ``y``, ``z`` on charts of dimension at most 3 and ``x1``
through ``xn`` otherwise; ``DVAR`` is ``d`` followed by a variable name.
A ``^`` after a variable is an exponent, between two ``DVAR`` tokens it is a
wedge.  A term with no basis part is a function.  Examples: ``x^2*y dx^dy``,
``-3/2*x dz + 1``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Tuple

from .symcore import Form, Poly, VectorField, merge_sign, _norm


class ParseError(ValueError):
    """Malformed literal; ``column`` is 1-based within the parsed text."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


def var_names(n: int) -> List[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n
        self.vars = {name: k for k, name in enumerate(var_names(n))}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        t = self.take()
        if t[1] != value or t[0] == "end":
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def is_dvar(self, tok) -> bool:
        return tok[0] == "name" and tok[1].startswith("d") and tok[1][1:] in self.vars

    def form(self) -> Form:
        out = Form.zero(self.n)
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        out = out + self.term().scale(sign)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                s = -1 if tok[1] == "-" else 1
                out = out + self.term().scale(s)
            else:
                return out

    def term(self) -> Form:
        coeff = Poly.const(self.n, 1)
        tok = self.peek()
        if not self.is_dvar(tok):
            coeff = self.factor()
            while self.peek()[1] == "*" and self.peek()[0] == "op":
                self.take()
                if self.is_dvar(self.peek()):
                    break
                coeff = coeff * self.factor()
        basis: List[int] = []
        if self.is_dvar(self.peek()):
            basis.append(self.vars[self.take()[1][1:]])
            while self.peek()[1] == "^" and self.peek()[0] == "op":
                self.take()
                t = self.take()
                if not self.is_dvar((t[0], t[1], t[2])):
                    raise ParseError(f"expected a basis differential after '^', found {t[1]!r}", t[2])
                basis.append(self.vars[t[1][1:]])
        if len(set(basis)) != len(basis):
            return Form.zero(self.n)
        # sort the basis and account for the permutation sign
        sign = 1
        idx: Tuple[int, ...] = ()
        for b in basis:
            sign *= merge_sign(idx, (b,))
            idx = tuple(sorted(idx + (b,)))
        return Form(self.n, {idx: coeff.scale(sign)})

    def factor(self) -> Poly:
        tok = self.take()
        if tok[0] == "num":
            val = Fraction(int(tok[1]))
            if self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                den = self.take()
                if den[0] != "num":
                    raise ParseError(f"expected a denominator, found {den[1]!r}", den[2])
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                val = val / int(den[1])
            return Poly.const(self.n, _norm(val))
        if tok[0] == "name" and tok[1] in self.vars:
            e = 1
            if self.peek()[1] == "^" and self.peek()[0] == "op" and self.toks[self.i + 1][0] == "num":
                self.take()
                e = int(self.take()[1])
            mono = [0] * self.n
            mono[self.vars[tok[1]]] = e
            return Poly(self.n, {tuple(mono): 1})
        raise ParseError(f"unexpected token {tok[1] or 'end of input'!r}", tok[2])

    def finish(self):
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_form(text: str, n: int) -> Form:
    p = _Parser(text, n)
    out = p.form()
    p.finish()
    return out


def parse_poly(text: str, n: int) -> Poly:
    f = parse_form(text, n)
    if any(idx for idx in f.comps):
        raise ParseError("expected a function, found a differential", 1)
    return f.function_part()


def parse_vector_field(text: str, n: int) -> VectorField:
    p = _Parser(text, n)
    p.expect("(")
    comps: List[Poly] = []
    if not (p.peek()[0] == "op" and p.peek()[1] == ")"):
        while True:
            col = p.peek()[2]
            f = p.form()
            if any(idx for idx in f.comps):
                raise ParseError("vector field components must be functions", col)
            comps.append(f.function_part())
            if p.peek()[1] == "," and p.peek()[0] == "op":
                p.take()
                continue
            break
    close = p.expect(")")
    p.finish()
    if len(comps) != n:
        raise ParseError(f"expected {n} components, found {len(comps)}", close[2])
    return VectorField(comps, n)


def _fmt_scalar(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _mono_key(m: Sequence[int]):
    return (-sum(m), tuple(-e for e in m))


def _fmt_mono(m: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(m, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _terms(f: Form) -> List[Tuple[object, str]]:
    names = var_names(f.n)
    out = []
    for idx in sorted(f.comps, key=lambda i: (len(i), i)):
        basis = "^".join("d" + names[i] for i in idx)
        p = f.comps[idx]
        for m in sorted(p.terms, key=_mono_key):
            c = p.terms[m]
            mono = _fmt_mono(m, names)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{_fmt_scalar(mag)}*{mono}"
            else:
                body = "" if (mag == 1 and basis) else _fmt_scalar(mag)
            text = " ".join(s for s in (body, basis) if s)
            out.append((c, text))
    return out


def format_form(f: Form) -> str:
    terms = _terms(f)
    if not terms:
        return "0"
    pieces = []
    for k, (c, text) in enumerate(terms):
        if k == 0:
            pieces.append(("-" if c < 0 else "") + text)
        else:
            pieces.append(("- " if c < 0 else "+ ") + text)
    return " ".join(pieces)


def format_poly(p: Poly) -> str:
    return format_form(Form.function(p))


def format_vector_field(v: VectorField) -> str:
    return "(" + ", ".join(format_poly(c) for c in v.components) + ")"


def format_forms(forms: Sequence[Form]) -> str:
    return "[" + ", ".join(format_form(f) for f in forms) + "]"


def render(obj) -> str:
    """Human-readable text for any value that can appear in a counterexample."""
    if isinstance(obj, Form):
        return format_form(obj)
    if isinstance(obj, Poly):
        return format_poly(obj)
    if isinstance(obj, VectorField):
        return format_vector_field(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(render(x) for x in obj) + "]"
    return str(obj)
