import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from golden_data import N5_PHI, N5_ROWS
from recipchow.detrep import (BETA, GAMMA, LinearSpace, chow_form, kernel_witness_check,
                              phi_symbolic, phi_terms, v_vectors, v_vectors_by_relations)
from recipchow.errors import PreconditionError
from recipchow.exterior import dual_sign, pluecker_from_matrix, subsets, top_pairing
from recipchow.linalg import RatMatrix, det_exact
from recipchow.matroid import Matroid
from recipchow.poly import MultiPoly
from recipchow.sampling import random_matrix, random_space, random_space_with_zeros
from recipchow.simplicial import forest_expansion, uniform_v_vectors

seeds = st.integers(0, 10 ** 6)


def _gamma_of(N_rows, n):
    beta = pluecker_from_matrix(N_rows).as_dict()
    return {I: top_pairing(I, beta, n) for I in subsets(n, n - len(N_rows))}


def _space_through_inverse(rng, n, d):
    """L containing w^{-1} and N in Gr(n-d, n) containing w."""
    while True:
        winv = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 3)) for _ in range(n)]
        w = [1 / x for x in winv]
        try:
            L = LinearSpace.from_rows([winv] + random_matrix(rng, d - 1, n, bound=5))
        except PreconditionError:
            continue
        N = [w] + random_matrix(rng, n - d - 1, n, bound=5)
        if RatMatrix.from_rows(N).rank() == n - d:
            return L, N, w


@given(seeds, st.integers(3, 6))
def test_two_vector_tables_agree(seed, n):
    rng = random.Random(seed)
    d = rng.randint(2, n - 1)
    m = random_space_with_zeros(rng, n, d).matroid
    if not m.is_loopless():
        return
    assert v_vectors(m).agrees_up_to_column_sign(v_vectors_by_relations(m))


@pytest.mark.parametrize("n,d", [(4, 2), (5, 2), (5, 3), (6, 3), (6, 4)])
def test_closed_form_matches_kernel_table(n, d):
    assert uniform_v_vectors(n, d).agrees_up_to_column_sign(v_vectors(Matroid.uniform(d, n)))


def test_closed_form_small_case():
    table = uniform_v_vectors(5, 3)
    # coordinates indexed by facets 125, 135, 145, 235, 245, 345
    v = table[(1, 2, 3)]
    expected = (1, -1, 0, 1, 0, 0)
    assert v in (tuple(map(Fraction, expected)), tuple(Fraction(-x) for x in expected))
    assert uniform_v_vectors(4, 2)[(1, 2)] in ((1, -1, 0), (-1, 1, 0))


def test_phi_terms_rank3_example():
    assert phi_terms(LinearSpace.from_rows(N5_ROWS).matroid, BETA) == N5_PHI


@given(seeds, st.integers(3, 6))
def test_chow_form_vanishes_on_meeting_spaces(seed, n):
    rng = random.Random(seed)
    d = rng.randint(1, n - 1)
    L, N, _ = _space_through_inverse(rng, n, d)
    phi = phi_symbolic(L)
    assert det_exact(phi.evaluate(_gamma_of(N, n))) == 0


@given(seeds)
def test_chow_form_is_nonzero_and_of_degree_k(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 6)
    d = rng.randint(2, n - 1)
    L = random_space(rng, n, d)
    p = chow_form(L)
    k = v_vectors(L.matroid).k
    assert not p.is_zero()
    assert p.is_homogeneous() and p.total_degree() == k
    assert p.max_exponent() == 1


@given(seeds)
def test_symbolic_matrix_determinant_is_chow_form(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 5)
    d = rng.randint(2, n - 1)
    L = random_space_with_zeros(rng, n, d)
    if not L.matroid.is_loopless():
        return
    from recipchow.poly import det_poly
    assert det_poly(phi_symbolic(L).polys()) == chow_form(L)


@given(seeds)
def test_beta_convention_is_substitution(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 5)
    d = rng.randint(1, n - 1)
    L = random_space(rng, n, d)
    g = chow_form(L, GAMMA)
    b = chow_form(L, BETA)
    # gamma_I = sign(I) beta_{I^c}
    sub = {}
    for I in subsets(n, d):
        Ic = tuple(i for i in range(1, n + 1) if i not in I)
        name = "b_" + "".join(map(str, Ic))
        sub["g_" + "".join(map(str, I))] = MultiPoly.var(name, b.vars) * dual_sign(I)
    assert g.substitute(sub) == b


@pytest.mark.parametrize("d,n", [(2, 4), (2, 5), (3, 5)])
def test_cleared_form_equals_forest_expansion(d, n):
    L = random_space(random.Random(n * 10 + d), n, d, den=3)
    assert chow_form(L, cleared=True) == forest_expansion(n, d, alpha=L.plucker.as_dict())


@given(seeds)
def test_kernel_witnesses(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 6)
    d = rng.randint(1, n - 1)
    L, _, w = _space_through_inverse(rng, n, d)
    delta = {I: Fraction(rng.randint(-5, 5)) for I in subsets(n, n - d - 1)}
    assert kernel_witness_check(L, w, delta)


def test_kernel_witness_preconditions():
    L = LinearSpace.from_rows([[1, 1, 1], [0, 1, 2]])
    with pytest.raises(PreconditionError):
        kernel_witness_check(L, [1, 0, 1], {(1,): 1})
    with pytest.raises(PreconditionError):
        kernel_witness_check(L, [1, 2, 7], {(1,): 1})


def test_space_validation():
    with pytest.raises(PreconditionError):
        LinearSpace.from_rows([[1, 2], [2, 4]])
    L = LinearSpace.from_rows([[1, 0, 1], [0, 1, 1]])
    assert L.contains([2, 3, 5]) and not L.contains([1, 1, 1])
