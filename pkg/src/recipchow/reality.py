"""Exact reality checks: real fibers of L^{-1} for d = 2, sign-pattern
transversality, and the complex-point criterion for hyperbolicity."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .detrep import LinearSpace
from .entropic import fiber_coefficients
from .errors import GenericityError, InternalInconsistencyError, PreconditionError
from .exterior import PlueckerVector, complement_pluecker, pairing_transversal
from .linalg import RatMatrix, nullspace, rank
from .rational import GaussianRational, as_fraction
from .unipoly import UniPoly, real_roots_with_multiplicity, squarefree_part, sturm_real_roots


def real_space(L) -> LinearSpace:
    """Accept a LinearSpace or rows; reject entries with an imaginary part."""
    if isinstance(L, LinearSpace):
        return L
    rows = []
    for r in L:
        row = []
        for x in r:
            if isinstance(x, complex) or (isinstance(x, GaussianRational) and not x.is_real()):
                raise PreconditionError("reality checks need a real linear space")
            row.append(x.re if isinstance(x, GaussianRational) else x)
        rows.append(row)
    return LinearSpace.from_rows(rows)


# --- real fibers at d = 2 ---------------------------------------------------

def fiber_form(L: LinearSpace, u: Sequence) -> list[Fraction]:
    """Binary form of degree n-1 (s-major) whose roots [s:t] give the points
    1/(s v1 + t v2) of L^{-1} with (v1.x : v2.x) = (u1 : u2)."""
    if L.d != 2:
        raise PreconditionError("fiber forms need d = 2")
    v1, v2 = L.mat.row(0), L.mat.row(1)
    u1, u2 = as_fraction(u[0]), as_fraction(u[1])
    c = [u2 * a - u1 * b for a, b in zip(v1, v2)]
    return [as_fraction(x) for x in fiber_coefficients(v1, v2, c)]


@dataclass(frozen=True)
class FiberRoots:
    degree: int
    distinct_real: int
    real_with_multiplicity: int
    squarefree: bool

    @property
    def nonreal(self) -> int:
        return self.degree - self.real_with_multiplicity


def fiber_roots(form: Sequence) -> FiberRoots:
    """Real roots of a binary form on P^1, the point [1:0] included."""
    m = len(form) - 1
    if all(c == 0 for c in form):
        raise GenericityError("fiber form vanishes identically")
    at_infinity = 0
    while form[at_infinity] == 0:
        at_infinity += 1
    g = UniPoly(list(reversed(form)))          # f(s, 1), lowest degree first
    finite = g.degree > 0
    distinct = (sturm_real_roots(g) if finite else 0) + (1 if at_infinity else 0)
    mult = (real_roots_with_multiplicity(g) if finite else 0) + at_infinity
    squarefree = at_infinity <= 1 and squarefree_part(g).degree == g.degree
    return FiberRoots(m, distinct, mult, squarefree)


@dataclass(frozen=True)
class FiberCheckReport:
    seed: int
    samples: int
    squarefree: int
    collisions: int
    nonreal_observed: bool

    @property
    def ok(self) -> bool:
        return not self.nonreal_observed


def fiber_check_report(L, trials: int = 100, seed: int = 0, bound: int = 50) -> FiberCheckReport:
    L = real_space(L)
    if L.d != 2:
        raise PreconditionError("fiber root check needs d = 2")
    rng = random.Random(seed)
    m = L.n - 1
    squarefree = collisions = 0
    nonreal = False
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 10 * trials + 100:
            raise GenericityError("too many degenerate fiber samples")
        u = (Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
             Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
        if u == (0, 0):
            continue
        form = fiber_form(L, u)
        if all(c == 0 for c in form):
            continue                                # degenerate sample, resample
        r = fiber_roots(form)
        done += 1
        if r.nonreal:
            nonreal = True
        if r.squarefree:
            squarefree += 1
            if r.distinct_real != m and not r.nonreal:
                raise InternalInconsistencyError("squarefree real fiber with the wrong root count")
        else:
            collisions += 1
    return FiberCheckReport(seed, done, squarefree, collisions, nonreal)


def fiber_real_root_check(L, trials: int = 100, seed: int = 0) -> bool:
    """True iff no sampled fiber of L^{-1} had a nonreal point."""
    return fiber_check_report(L, trials, seed).ok


# --- sign patterns ----------------------------------------------------------

@dataclass(frozen=True)
class SignPattern:
    n: int
    c: int
    signs: tuple          # +1 / -1 / 0 per c-subset in lex order

    def __post_init__(self):
        if len(self.signs) != comb(self.n, self.c):
            raise PreconditionError("sign pattern has the wrong length")

    @classmethod
    def of(cls, p: PlueckerVector) -> "SignPattern":
        return cls(p.n, p.d, tuple((x > 0) - (x < 0) for x in p.coeffs))

    def agrees_with(self, other: "SignPattern") -> bool:
        """Signs on the common support agree up to one global flip."""
        prods = {a * b for a, b in zip(self.signs, other.signs) if a and b}
        return len(prods) == 1


@dataclass(frozen=True)
class Transversality:
    agree: bool
    pairing: Fraction
    witness: tuple | None       # nonzero vector of L meet M when the pairing vanishes


def stability_transversality(L, M) -> Transversality:
    L, M = real_space(L), real_space(M)
    if L.n != M.n or L.d + M.d != L.n:
        raise PreconditionError("need L in Gr(d, n) and M in Gr(n-d, n)")
    pMperp = complement_pluecker(M.plucker)
    pairing = pairing_transversal(L.plucker, pMperp)
    agree = SignPattern.of(L.plucker).agrees_with(SignPattern.of(pMperp))
    if agree and pairing == 0:
        raise InternalInconsistencyError("matching sign patterns but zero pairing")
    witness = None
    if pairing == 0:
        # a L = b M  <=>  (a, -b) in the left kernel of [L; M]
        stacked = RatMatrix.from_rows(L.mat.tolist() + M.mat.tolist())
        kernel = nullspace(stacked.transpose())
        coeffs = kernel.row(0)[:L.d]
        witness = tuple(sum((c * L.mat[r, j] for r, c in enumerate(coeffs)), Fraction(0))
                        for j in range(L.n))
        if not any(witness):
            raise InternalInconsistencyError("zero pairing without an intersection witness")
    return Transversality(agree, pairing, witness)


# --- complex points ---------------------------------------------------------

def hyp_point_check(L, a: Sequence, b: Sequence) -> bool:
    """True iff (a + i b)^{-1} is not in L, for b a nonzero vector of L^perp."""
    L = real_space(L)
    a = [as_fraction(x) for x in a]
    b = [as_fraction(x) for x in b]
    if len(a) != L.n or len(b) != L.n:
        raise PreconditionError("a and b must have length n")
    if not any(b):
        raise PreconditionError("b must be nonzero")
    if any(x != 0 for x in (L.mat @ RatMatrix.from_rows([[x] for x in b])).entries):
        raise PreconditionError("b must lie in the orthogonal complement of L")
    z = [GaussianRational(x, y) for x, y in zip(a, b)]
    if any(x == 0 for x in z):
        raise PreconditionError("a + i b has a zero coordinate")
    zinv = [GaussianRational(1) / x for x in z]
    return rank(RatMatrix.from_rows(L.mat.tolist() + [zinv])) == L.d + 1
