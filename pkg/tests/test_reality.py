import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from recipchow.detrep import LinearSpace
from recipchow.errors import PreconditionError
from recipchow.exterior import complement_pluecker
from recipchow.linalg import nullspace
from recipchow.rational import GaussianRational
from recipchow.reality import (SignPattern, fiber_check_report, fiber_form, fiber_roots,
                               fiber_real_root_check, hyp_point_check, real_space,
                               stability_transversality)
from recipchow.sampling import random_space

seeds = st.integers(0, 10 ** 6)
s, t = sympy.symbols("s t")


def _sympy_real_root_count(form):
    """Real roots on P^1 with multiplicity, via sympy."""
    m = len(form) - 1
    at_infinity = next(i for i, c in enumerate(form) if c != 0)
    f = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in form], s)
    finite = len(sympy.real_roots(f)) if f.degree() > 0 else 0
    return finite + at_infinity, m


@settings(max_examples=25)
@given(seeds, st.integers(3, 6))
def test_fibers_are_real_against_sympy(seed, n):
    rng = random.Random(seed)
    L = random_space(rng, n, 2, generic=False, bound=5)
    u = (Fraction(rng.randint(-9, 9)), Fraction(rng.randint(1, 9)))
    form = fiber_form(L, u)
    if all(c == 0 for c in form):
        return
    real, degree = _sympy_real_root_count(form)
    assert degree == n - 1
    r = fiber_roots(form)
    assert r.real_with_multiplicity == real == degree
    assert r.nonreal == 0
    if r.squarefree:
        assert r.distinct_real == n - 1


def test_fiber_roots_known_forms():
    # (s - t)(s + 2t) = s^2 + st - 2t^2
    r = fiber_roots([Fraction(1), Fraction(1), Fraction(-2)])
    assert (r.distinct_real, r.squarefree, r.nonreal) == (2, True, 0)
    r = fiber_roots([Fraction(1), Fraction(0), Fraction(1)])
    assert r.nonreal == 2
    # t (s - t): one root at [1:0]
    r = fiber_roots([Fraction(0), Fraction(1), Fraction(-1)])
    assert (r.distinct_real, r.real_with_multiplicity) == (2, 2)
    r = fiber_roots([Fraction(1), Fraction(-2), Fraction(1)])
    assert not r.squarefree and r.distinct_real == 1 and r.real_with_multiplicity == 2


@settings(max_examples=10)
@given(seeds, st.integers(3, 6))
def test_fiber_report(seed, n):
    L = random_space(random.Random(seed), n, 2, generic=False)
    rep = fiber_check_report(L, trials=20, seed=seed)
    assert rep.ok and rep.samples == 20
    assert rep.squarefree + rep.collisions == 20


def test_parallel_columns_still_real():
    # columns 1 and 2 are parallel, so every fiber form picks up the factor l_1
    L = LinearSpace.from_rows([[1, 2, 0, 1], [1, 2, 1, 3]])
    assert fiber_real_root_check(L, trials=30)
    form = fiber_form(L, (1, 2))
    # l_1 = s + t vanishes at [1:-1]
    assert sum(c * (-1) ** k for k, c in enumerate(form)) == 0


def test_complex_space_rejected():
    with pytest.raises(PreconditionError):
        real_space([[GaussianRational(1, 1), 0, 1], [0, 1, 1]])
    assert real_space([[GaussianRational(1), 0, 1], [0, 1, 1]]).n == 3


@given(seeds, st.integers(3, 6))
def test_hyperbolicity_points(seed, n):
    rng = random.Random(seed)
    d = rng.randint(1, n - 1)
    L = random_space(rng, n, d, generic=False)
    K = nullspace(L.mat)
    coeffs = [rng.randint(-4, 4) for _ in range(K.rows)]
    b = [sum((c * K[r, j] for r, c in enumerate(coeffs)), Fraction(0)) for j in range(n)]
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
    if not any(b) or any(x == 0 and y == 0 for x, y in zip(a, b)):
        return
    assert hyp_point_check(L, a, b)


def test_hyperbolicity_preconditions():
    L = LinearSpace.from_rows([[1, 1, 1]])
    with pytest.raises(PreconditionError):
        hyp_point_check(L, [1, 2, 3], [1, 1, 1])      # not in L^perp
    with pytest.raises(PreconditionError):
        hyp_point_check(L, [1, 2, 3], [0, 0, 0])


def _vandermonde(nodes, d):
    return LinearSpace.from_rows([[Fraction(x) ** p for x in nodes] for p in range(d)])


def test_positive_grassmannian_is_transversal_to_matching_pattern():
    L = _vandermonde([1, 2, 3, 4, 5], 2)
    assert all(c > 0 for c in L.plucker.coeffs)
    # M with M^perp totally positive: M = (Vandermonde in Gr(2,5))^perp
    P = _vandermonde([1, 3, 4, 6, 7], 2)
    M = LinearSpace.from_rows(nullspace(P.mat).tolist())
    res = stability_transversality(L, M)
    assert res.agree and res.pairing != 0 and res.witness is None


@given(seeds)
def test_transversality_pairing_and_witness(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 6)
    d = rng.randint(1, n - 1)
    L = random_space(rng, n, d, generic=False)
    if rng.random() < 0.5 and d < n - 1:
        # force an intersection: put a row of L into M
        shared = [list(L.mat.row(0))]
        rest = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n - d - 1)]
        try:
            M = LinearSpace.from_rows(shared + rest)
        except PreconditionError:
            return
    else:
        M = random_space(rng, n, n - d, generic=False)
    res = stability_transversality(L, M)
    if res.agree:
        assert res.pairing != 0
    if res.pairing == 0:
        w = res.witness
        assert any(w) and L.contains(w) and M.contains(w)


def test_sign_pattern_agreement_up_to_global_flip():
    p = _vandermonde([1, 2, 3, 4], 2).plucker
    assert SignPattern.of(p).agrees_with(SignPattern.of(p.scaled(-1)))
    assert SignPattern.of(p).agrees_with(SignPattern.of(complement_pluecker(complement_pluecker(p))))
