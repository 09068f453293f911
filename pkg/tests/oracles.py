"""Independent sympy oracles for polynomials and forms.

Forms are evaluated as alternating multilinear maps on vectors with sympy
determinants, so signs here never go through the package's own sign rules.
"""
from __future__ import annotations

from itertools import combinations

import sympy as sp
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from tauq.symcore import Form, Poly, VectorField


def xs(n):
    return sp.symbols(f"x0:{n}") if n else ()


def poly_expr(p: Poly):
    x = xs(p.n)
    out = sp.Integer(0)
    for mono, c in p.terms.items():
        t = sp.Rational(c)
        for v, e in zip(x, mono):
            t *= v**e
        out += t
    return sp.expand(out)


def components(f: Form):
    return {idx: poly_expr(p) for idx, p in f.comps.items()}


def evaluate(f: Form, vectors):
    """``f(v_1, ..., v_k)`` for vectors given as lists of sympy expressions."""
    k = len(vectors)
    out = sp.Integer(0)
    for idx, p in f.comps.items():
        if len(idx) != k:
            continue
        if k == 0:
            out += poly_expr(p)
            continue
        m = sp.Matrix([[v[i] for v in vectors] for i in idx])
        out += poly_expr(p) * m.det()
    return sp.expand(out)


def coord(n, i):
    return [sp.Integer(1 if j == i else 0) for j in range(n)]


def from_evaluation(n, k, fn):
    """Components ``J -> fn(d_{j1}, ..., d_{jk})`` of a k-form."""
    out = {}
    for J in combinations(range(n), k):
        v = sp.expand(fn([coord(n, j) for j in J]))
        if v != 0:
            out[J] = v
    return out


def wedge_oracle(a: Form, b: Form):
    out = {}
    for I, p in components(a).items():
        for J, q in components(b).items():
            if set(I) & set(J):
                continue
            seq = list(I) + list(J)
            order = sorted(range(len(seq)), key=lambda t: seq[t])
            sign = Permutation(order).signature() if len(seq) > 1 else 1
            key = tuple(sorted(seq))
            out[key] = sp.expand(out.get(key, 0) + sign * p * q)
    return {k: v for k, v in out.items() if v != 0}


def d_oracle(a: Form):
    x = xs(a.n)
    out = {}
    for I, p in components(a).items():
        for i in range(a.n):
            if i in I:
                continue
            key = tuple(sorted(I + (i,)))
            sign = (-1) ** key.index(i)
            out[key] = sp.expand(out.get(key, 0) + sign * sp.diff(p, x[i]))
    return {k: v for k, v in out.items() if v != 0}


def interior_oracle(xi: VectorField, a: Form, k: int):
    """Components of ``i_xi a`` for a homogeneous k-form, via a(xi, -)."""
    v = [poly_expr(c) for c in xi.components]
    return from_evaluation(a.n, k - 1, lambda vecs: evaluate(a, [v] + vecs))


# -- hypothesis strategies ----------------------------------------------------

def monomials(n, max_degree=2):
    return st.tuples(*[st.integers(0, max_degree)] * n).filter(lambda m: sum(m) <= max_degree)


def polys(n, max_degree=2):
    return st.dictionaries(monomials(n, max_degree), st.integers(-3, 3), max_size=4).map(lambda t: Poly(n, t))


def forms(n, degree, max_degree=2):
    if degree < 0 or degree > n:
        return st.just(Form.zero(n))
    idxs = list(combinations(range(n), degree))
    return st.dictionaries(st.sampled_from(idxs), polys(n, max_degree), max_size=3).map(lambda c: Form(n, c))


def vector_fields(n, max_degree=2):
    return st.lists(polys(n, max_degree), min_size=n, max_size=n).map(lambda cs: VectorField(cs, n))
