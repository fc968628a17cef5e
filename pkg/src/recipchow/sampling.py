"""Seeded random rational inputs for tests, suites and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .detrep import LinearSpace
from .errors import PreconditionError


def random_rational(rng: random.Random, bound: int = 9, den: int = 1) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den) if den > 1 else 1)


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9, den: int = 1) -> list[list[Fraction]]:
    return [[random_rational(rng, bound, den) for _ in range(cols)] for _ in range(rows)]


def random_space(rng: random.Random, n: int, d: int, generic: bool = True,
                 bound: int = 9, den: int = 1) -> LinearSpace:
    """Random row space of a d x n matrix; ``generic`` forces full Pluecker support."""
    for _ in range(1000):
        try:
            L = LinearSpace.from_rows(random_matrix(rng, d, n, bound, den))
        except PreconditionError:
            continue
        if generic and any(c == 0 for c in L.plucker.coeffs):
            continue
        return L
    raise RuntimeError("could not sample a suitable linear space")


def random_space_with_zeros(rng: random.Random, n: int, d: int) -> LinearSpace:
    """Random space whose matrix has some forced zero entries, so the matroid
    is typically not uniform (still loopless)."""
    for _ in range(1000):
        rows = random_matrix(rng, d, n, bound=3)
        for r in rows:
            for j in range(n):
                if rng.random() < 0.35:
                    r[j] = Fraction(0)
        # a repeated column forces a parallel pair
        if n > d + 1 and rng.random() < 0.5:
            a, b = rng.sample(range(n), 2)
            for r in rows:
                r[b] = r[a]
        try:
            return LinearSpace.from_rows(rows)
        except PreconditionError:
            continue
    raise RuntimeError("could not sample a suitable linear space")


def random_point_in(space: LinearSpace, rng: random.Random, bound: int = 9) -> list[Fraction]:
    coeffs = [Fraction(rng.randint(-bound, bound)) for _ in range(space.d)]
    return [sum((c * space.mat[r, j] for r, c in enumerate(coeffs)), Fraction(0))
            for j in range(space.n)]
