"""Seeded generators of small random values for round-trip tests."""
from __future__ import annotations

import random
from fractions import Fraction

from rmatrix import lie
from rmatrix.scalars import Cyclotomic
from rmatrix.tensor_poly import MLaurent, RatFun, Tensor2, Tensor3


PHI = {3: 2, 4: 2, 5: 4, 6: 2}


def scalar(rng: random.Random, order: int | None = None):
    """A rational, or an element of Q(zeta_order) when ``order`` is given."""
    if order and rng.random() < 0.3:
        return Cyclotomic(order, [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(PHI[order])])
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def ratfun(rng: random.Random, names=("x", "y"), order: int | None = None) -> RatFun:
    terms = {}
    for _ in range(rng.randint(0, 3)):
        terms[tuple(rng.randint(-2, 3) for _ in names)] = scalar(rng, order)
    den = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if rng.random() < 0.4:
                den[(a, b)] = rng.randint(1, 2)
    return RatFun(MLaurent(names, terms), den)


def tensor2(rng: random.Random, n: int | None = None) -> Tensor2:
    n = n or rng.choice([2, 3])
    bs = lie.basis(n)
    order = rng.choice([None, 3, 4, 5, 6])
    return Tensor2(n, {(rng.choice(bs), rng.choice(bs)): ratfun(rng, order=order) for _ in range(rng.randint(0, 5))})


def tensor3(rng: random.Random, n: int | None = None) -> Tensor3:
    n = n or rng.choice([2, 3])
    bs = lie.basis(n) + (None,)
    order = rng.choice([None, 3, 4, 5, 6])
    entries = {}
    for _ in range(rng.randint(0, 4)):
        key = tuple(rng.choice(bs) for _ in range(3))
        entries[key] = ratfun(rng, ("x1", "x2", "x3"), order)
    return Tensor3(n, entries)
