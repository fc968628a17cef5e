"""The Bi-Chow form and equations of Hadamard products of linear spaces."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .detrep import LinearSpace, alpha_name, gamma_name
from .errors import GenericityError, InternalInconsistencyError, PreconditionError
from .exterior import PlueckerVector, gamma_from_beta, subsets
from .poly import MultiPoly
from .sampling import random_point_in
from .simplicial import forest_expansion, spanning_forests


@dataclass(frozen=True)
class BiChowForm:
    n: int
    d: int
    poly: MultiPoly

    def alpha_vars(self) -> list[str]:
        return [alpha_name(I, self.n) for I in subsets(self.n, self.d)]

    def gamma_vars(self) -> list[str]:
        return [gamma_name(I, self.n) for I in subsets(self.n, self.d)]

    def bidegree(self) -> tuple[int, int]:
        return self.poly.bidegree(self.alpha_vars(), self.gamma_vars())

    def expected_bidegree(self) -> tuple[int, int]:
        return comb(self.n - 1, self.d), comb(self.n - 1, self.d - 1)


def bichow_form(n: int, d: int) -> BiChowForm:
    """P(L, M) = sum_F c_F prod_{F} gamma_I prod_{not F} alpha_I, fully symbolic."""
    form = BiChowForm(n, d, forest_expansion(n, d))
    if form.bidegree() != form.expected_bidegree():
        raise InternalInconsistencyError(f"Bi-Chow bidegree {form.bidegree()} != {form.expected_bidegree()}")
    return form


def bichow_value(pL: PlueckerVector, pM: PlueckerVector) -> Fraction:
    """P evaluated at alpha = p(L) and gamma_I = (-1)^s(I) p_{[n]-I}(M)."""
    if pL.n != pM.n or pL.d + pM.d != pL.n:
        raise PreconditionError("need L in Gr(d, n) and M in Gr(n-d, n)")
    gamma = gamma_from_beta(pM)
    p = forest_expansion(pL.n, pL.d, alpha=pL.as_dict(), gamma=gamma.as_dict())
    return Fraction(p.terms().get((), 0))


def _require_full_support(p: PlueckerVector, what: str) -> None:
    zeros = [I for I, c in p.items() if c == 0]
    if zeros:
        raise GenericityError(f"{what} has a zero Pluecker coordinate at {zeros[0]}")


def _x_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def _surface(n: int, d: int, alpha, gamma) -> MultiPoly:
    """sum_F c_F x^(deg_F - C(n-2,d-2)) prod gamma_F prod alpha_(not F).

    ``alpha``/``gamma`` are dicts of numbers or None for symbolic.
    """
    labels = subsets(n, d)
    shift = comb(n - 2, d - 2)
    xs = _x_names(n)
    vars = list(xs)
    if alpha is None:
        vars += [alpha_name(I, n) for I in labels]
    if gamma is None:
        vars += [gamma_name(I, n) for I in labels]
    index = {v: i for i, v in enumerate(vars)}
    terms: dict = {}
    for F in spanning_forests(n, d):
        inF = set(F.faces)
        e = [0] * len(vars)
        for i in range(1, n + 1):
            deg = F.vertex_degree(i) - shift
            if deg < 0:
                raise InternalInconsistencyError(f"forest with vertex degree below {shift}")
            e[i - 1] = deg
        coeff = Fraction(F.coefficient)
        for I in labels:
            if I in inF:
                if gamma is None:
                    e[index[gamma_name(I, n)]] = 1
                else:
                    coeff *= gamma[I]
            elif alpha is None:
                e[index[alpha_name(I, n)]] = 1
            else:
                coeff *= alpha[I]
        if coeff:
            key = tuple(e)
            terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(vars, terms)


def hadamard_surface_symbolic(n: int, d: int) -> MultiPoly:
    """Equation of L * M with symbolic alpha = p(L), gamma = p(M^perp)."""
    return _surface(n, d, None, None)


def hadamard_surface(L: LinearSpace, M: LinearSpace, normalize: bool = True) -> MultiPoly:
    """Polynomial in x1..xn of degree C(n-2, d-1) vanishing on the Hadamard product L * M."""
    n, d = L.n, L.d
    if M.n != n or M.d != n - d:
        raise PreconditionError("need L in Gr(d, n) and M in Gr(n-d, n)")
    if not 2 <= d < n:
        raise PreconditionError("Hadamard surfaces need 2 <= d < n")
    _require_full_support(L.plucker, "L")
    _require_full_support(M.plucker, "M")
    gamma = gamma_from_beta(M.plucker).as_dict()
    p = _surface(n, d, L.plucker.as_dict(), gamma)
    if p.is_zero():
        raise GenericityError("the expansion vanishes identically")
    p = p.with_vars(_x_names(n))
    if any(p.monomial_gcd().values()):
        raise GenericityError("output has a monomial factor; inputs are not generic")
    expected = comb(n - 2, d - 1)
    if not p.is_homogeneous() or p.total_degree() != expected:
        raise GenericityError(f"expected a form of degree {expected}")
    return p.normalized() if normalize else p


def membership_check(poly: MultiPoly, L: LinearSpace, M: LinearSpace, trials: int,
                     rng: random.Random | None = None) -> bool:
    """All sampled products a*b vanish and one random point does not."""
    if trials <= 0:
        return True
    rng = rng or random.Random(0)
    names = _x_names(L.n)
    for _ in range(trials):
        a = random_point_in(L, rng)
        b = random_point_in(M, rng)
        pt = {x: ai * bi for x, ai, bi in zip(names, a, b)}
        if poly.evaluate(pt) != 0:
            return False
    for _ in range(20):
        pt = {x: Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for x in names}
        if poly.evaluate(pt) != 0:
            return True
    return False


def bichow_symmetry_pair(n: int, d: int, rng: random.Random) -> tuple[LinearSpace, LinearSpace, list[Fraction]]:
    """Random L in Gr(d, n), M in Gr(n-d, n) with w in M and w^{-1} in L."""
    while True:
        w = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5)) for _ in range(n)]
        winv = [1 / x for x in w]
        rowsL = [winv] + [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(d - 1)]
        rowsM = [w] + [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n - d - 1)]
        try:
            L = LinearSpace.from_rows(rowsL)
            M = LinearSpace.from_rows(rowsM)
        except PreconditionError:
            continue
        if all(c != 0 for c in L.plucker.coeffs) and all(c != 0 for c in M.plucker.coeffs):
            return L, M, w
