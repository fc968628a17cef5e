from fractions import Fraction
from itertools import combinations, permutations

import pytest
import sympy
from sympy.combinatorics import Permutation
from hypothesis import assume, given
from hypothesis import strategies as st

from recipchow.errors import PreconditionError
from recipchow.exterior import (complement_pluecker, dual_sign, gamma_from_beta, orthocomplement,
                                pairing_transversal, pluecker_from_matrix, sort_sign, subsets,
                                top_pairing, wedge_coefficient, wedge_vector)
from recipchow.linalg import RatMatrix, det_exact, nullspace, rank


def matrices(d_min=1):
    @st.composite
    def build(draw):
        n = draw(st.integers(d_min + 1, 6))
        d = draw(st.integers(d_min, n - 1))
        rows = draw(st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=d, max_size=d))
        assume(rank(RatMatrix.from_rows(rows)) == d)
        return rows
    return build()


@given(matrices())
def test_coordinates_are_maximal_minors(rows):
    p = pluecker_from_matrix(rows)
    M = sympy.Matrix(rows)
    d, n = M.shape
    for I in subsets(n, d):
        assert p[I] == M[:, [i - 1 for i in I]].det()


@given(matrices(2))
def test_three_term_relations(rows):
    assert pluecker_from_matrix(rows).three_term_relations_hold()


def test_non_pluecker_vector_fails_relations():
    p = pluecker_from_matrix([[1, 0, 1, 1], [0, 1, 1, 2]])
    broken = p.scaled(1)
    coeffs = list(broken.coeffs)
    coeffs[0] += 1
    from recipchow.exterior import PlueckerVector
    assert not PlueckerVector(4, 2, tuple(coeffs)).three_term_relations_hold()


@given(matrices(), st.lists(st.integers(-3, 3), min_size=36, max_size=36))
def test_row_operations_scale_by_determinant(rows, g):
    d = len(rows)
    G = RatMatrix.from_rows([g[i * 6:i * 6 + d] for i in range(d)])
    assume(det_exact(G) != 0)
    new = G @ RatMatrix.from_rows(rows)
    assert pluecker_from_matrix(rows).scaled(det_exact(G)) == pluecker_from_matrix(new)


@given(matrices())
def test_complement_matches_kernel(rows):
    kernel, pk = orthocomplement(rows)
    formula = complement_pluecker(pluecker_from_matrix(rows))
    assert formula.proportional_to(pk) is not None
    assert all(x == 0 for x in (RatMatrix.from_rows(rows) @ kernel.transpose()).entries)


@given(matrices())
def test_gamma_inverts_complement(rows):
    p = pluecker_from_matrix(rows)
    # complementing twice returns p up to sign
    back = gamma_from_beta(complement_pluecker(p))
    assert back.proportional_to(p) in (1, -1)


@given(matrices(), st.data())
def test_pairing_is_cauchy_binet(rows, data):
    d, n = len(rows), len(rows[0])
    other = data.draw(st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=d, max_size=d))
    assume(rank(RatMatrix.from_rows(other)) == d)
    pair = pairing_transversal(pluecker_from_matrix(rows), pluecker_from_matrix(other))
    A, K = RatMatrix.from_rows(rows), RatMatrix.from_rows(other)
    assert pair == det_exact(A @ K.transpose())


def test_pairing_vanishes_on_meeting_spaces():
    L = [[1, 0, 0, 1], [0, 1, 0, 1]]
    M = [[1, 0, 0, 1], [0, 0, 1, 0]]        # shares (1,0,0,1) with L
    Mperp = nullspace(RatMatrix.from_rows(M)).tolist()
    assert pairing_transversal(pluecker_from_matrix(L), pluecker_from_matrix(Mperp)) == 0


def test_sort_sign():
    assert sort_sign((3, 1, 2)) == (1, (1, 2, 3))
    assert sort_sign((2, 1, 3)) == (-1, (1, 2, 3))
    assert sort_sign((1, 1)) == (0, (1, 1))


def test_sort_sign_matches_permutation_parity():
    for p in permutations(range(1, 5)):
        sign, _ = sort_sign(p)
        assert sign == Permutation([i - 1 for i in p]).signature()


@pytest.mark.parametrize("n,d", [(4, 2), (5, 2), (5, 3), (6, 3)])
def test_dual_sign_is_wedge_sign(n, d):
    # e_I ^ e_{I^c} = dual_sign(I) e_[n]
    for I in combinations(range(1, n + 1), d):
        Ic = tuple(i for i in range(1, n + 1) if i not in I)
        e = [[int(j == i) for j in range(1, n + 1)] for i in Ic]
        assert wedge_coefficient(I, e, n) == dual_sign(I)
        assert top_pairing(I, {Ic: 1}, n) == dual_sign(I)


def test_wedge_vector_alternates():
    w = [Fraction(1), Fraction(2), Fraction(3)]
    assert wedge_vector({(1,): 1}, w, 3) == {(1, 2): 2, (1, 3): 3}
    assert wedge_vector({(2,): 1}, w, 3) == {(1, 2): -1, (2, 3): 3}


def test_rank_deficient_input():
    with pytest.raises(PreconditionError):
        pluecker_from_matrix([[1, 2, 3], [2, 4, 6]])
