"""Seeded random samples of polynomials, forms and sections.

Every sampler takes a ``random.Random``; per-sample generators are derived
from ``(seed, suite, property, index)`` so a sample never depends on how many
other samples were drawn before it.
"""
from __future__ import annotations

import hashlib
import random
from itertools import combinations, product
from typing import List, Sequence, Tuple

from .symcore import Form, Poly, VectorField

COEFF_RANGE = 3


def derived_rng(seed: int, *labels) -> random.Random:
    text = "\x1f".join([str(seed)] + [str(x) for x in labels])
    digest = hashlib.sha256(text.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def monomials(n: int, max_degree: int) -> List[Tuple[int, ...]]:
    out = [m for m in product(range(max_degree + 1), repeat=n) if sum(m) <= max_degree]
    out.sort(key=lambda m: (sum(m), m))
    return out


def sample_coeff(rng: random.Random) -> int:
    c = 0
    while c == 0:
        c = rng.randint(-COEFF_RANGE, COEFF_RANGE)
    return c


def sample_poly(n: int, rng: random.Random, max_degree: int = 2, terms: int | None = None) -> Poly:
    """Sparse polynomial: a few monomials drawn uniformly up to ``max_degree``."""
    monos = monomials(n, max_degree)
    if terms is None:
        terms = rng.randint(0, min(3, len(monos)))
    chosen = rng.sample(monos, min(terms, len(monos)))
    return Poly(n, {m: sample_coeff(rng) for m in chosen})


def sample_form(n: int, degree: int, rng: random.Random, max_degree: int = 2) -> Form:
    """Homogeneous form; zero when ``degree`` exceeds the chart dimension."""
    if degree < 0 or degree > n:
        return Form.zero(n)
    bases = list(combinations(range(n), degree))
    k = rng.randint(1, min(2, len(bases)))
    comps = {}
    for idx in rng.sample(bases, k):
        comps[idx] = sample_poly(n, rng, max_degree, terms=rng.randint(1, 2))
    return Form(n, comps)


def sample_vector_field(n: int, rng: random.Random, max_degree: int = 2) -> VectorField:
    return VectorField([sample_poly(n, rng, max_degree) for _ in range(n)], n)


def sample_section(n: int, r: int, rng: random.Random, max_degree: int = 2) -> Tuple[Poly, ...]:
    return tuple(sample_poly(n, rng, max_degree) for _ in range(r))


def sample_matrix(n: int, r: int, rng: random.Random, max_degree: int = 2) -> Tuple[Tuple[Poly, ...], ...]:
    return tuple(tuple(sample_poly(n, rng, max_degree, terms=rng.randint(0, 1)) for _ in range(r)) for _ in range(r))


def pick(rng: random.Random, seq: Sequence):
    return seq[rng.randrange(len(seq))]
