import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recipchow.detrep import LinearSpace
from recipchow.errors import GenericityError, PreconditionError
from recipchow.hadamard import (bichow_form, bichow_symmetry_pair, bichow_value, hadamard_surface,
                                membership_check)
from recipchow.linalg import RatMatrix, nullspace
from recipchow.poly import MultiPoly
from recipchow.sampling import random_point_in, random_space

seeds = st.integers(0, 10 ** 6)


@pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (5, 2), (5, 3), (6, 2)])
def test_bichow_bidegree(n, d):
    form = bichow_form(n, d)
    assert form.bidegree() == (comb(n - 1, d), comb(n - 1, d - 1))


@given(seeds, st.sampled_from([(4, 2), (5, 2), (5, 3)]))
def test_bichow_vanishes_both_ways(seed, shape):
    n, d = shape
    L, M, w = bichow_symmetry_pair(n, d, random.Random(seed))
    assert bichow_value(L.plucker, M.plucker) == 0
    assert bichow_value(M.plucker, L.plucker) == 0


def test_bichow_generic_pair_nonzero():
    rng = random.Random(3)
    L = random_space(rng, 5, 2)
    M = random_space(rng, 5, 3)
    assert bichow_value(L.plucker, M.plucker) != 0


def _implicit_equation(L, M, degree, rng):
    """Degree-`degree` forms vanishing on sampled products, by linear algebra."""
    n = L.n
    monos = list(combinations_with_replacement(range(n), degree))
    rows = []
    for _ in range(len(monos) + 10):
        a, b = random_point_in(L, rng), random_point_in(M, rng)
        x = [ai * bi for ai, bi in zip(a, b)]
        row = []
        for m in monos:
            v = Fraction(1)
            for i in m:
                v *= x[i]
            row.append(v)
        rows.append(row)
    N = nullspace(RatMatrix.from_rows(rows))
    vars = [f"x{i}" for i in range(1, n + 1)]
    out = []
    for r in range(N.rows):
        terms = {}
        for m, c in zip(monos, N.row(r)):
            e = [0] * n
            for i in m:
                e[i] += 1
            terms[tuple(e)] = c
        out.append(MultiPoly(vars, terms))
    return out


@pytest.mark.parametrize("n,d,seed", [(4, 2, 0), (4, 2, 1), (5, 2, 2), (5, 3, 3)])
def test_surface_matches_interpolation(n, d, seed):
    rng = random.Random(seed)
    L = random_space(rng, n, d)
    M = random_space(rng, n, n - d)
    p = hadamard_surface(L, M)
    eqs = _implicit_equation(L, M, comb(n - 2, d - 1), rng)
    assert len(eqs) == 1
    assert eqs[0].normalized() == p


@given(seeds, st.sampled_from([(4, 2), (5, 2), (5, 3), (6, 2)]))
def test_surface_vanishes_on_products(seed, shape):
    n, d = shape
    rng = random.Random(seed)
    L = random_space(rng, n, d)
    M = random_space(rng, n, n - d)
    p = hadamard_surface(L, M)
    assert p.total_degree() == comb(n - 2, d - 1) and p.is_homogeneous()
    assert membership_check(p, L, M, 10, rng)


def test_surface_is_symmetric_in_arguments():
    # L * M = M * L as sets
    rng = random.Random(11)
    L = random_space(rng, 4, 2)
    M = random_space(rng, 4, 2)
    assert hadamard_surface(L, M) == hadamard_surface(M, L)


def test_surface_needs_full_support():
    L = LinearSpace.from_rows([[1, 0, 1, 1], [0, 1, 1, 2]])
    M = LinearSpace.from_rows([[1, 0, 3, 1], [0, 1, 0, 2]])      # p_34(M) = 0
    with pytest.raises(GenericityError):
        hadamard_surface(L, M)


def test_surface_shape_checked():
    L = LinearSpace.from_rows([[1, 2, 3, 4]])
    M = LinearSpace.from_rows([[1, 0, 1, 1], [0, 1, 1, 2]])
    with pytest.raises(PreconditionError):
        hadamard_surface(L, M)
