"""Subsets of [n], sign conventions and Pluecker vectors.

Subsets are sorted tuples of 1-based ground-set elements; d-subsets are
ranked lexicographically, which is also the order of Pluecker coordinates.
The identification of wedge^d with the dual of wedge^(n-d) uses

    e_I^*  =  (-1)^s(I) e_{[n] minus I},   s(I) = d(d+1)/2 + sum(I),

and only the parity of s(I) is ever stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, InternalInconsistencyError, PreconditionError
from .linalg import RatMatrix, as_matrix, det_exact, nullspace, rank
from .rational import as_fraction, format_rational

Subset = tuple[int, ...]


@lru_cache(maxsize=None)
def subsets(n: int, d: int) -> tuple[Subset, ...]:
    """All d-subsets of [n] in lexicographic order."""
    return tuple(combinations(range(1, n + 1), d))


@lru_cache(maxsize=None)
def subset_index(n: int, d: int) -> dict[Subset, int]:
    return {s: i for i, s in enumerate(subsets(n, d))}


def complement(I: Iterable[int], n: int) -> Subset:
    s = set(I)
    return tuple(i for i in range(1, n + 1) if i not in s)


def check_subset(I: Sequence[int], n: int) -> Subset:
    I = tuple(I)
    if any(a >= b for a, b in zip(I, I[1:])) or any(i < 1 or i > n for i in I):
        raise PreconditionError(f"{I} is not a sorted subset of [{n}]")
    return I


def sign_exponent(I: Sequence[int], d: int) -> int:
    """Parity of s(I) = d(d+1)/2 + sum(I)."""
    if len(I) != d:
        raise DimensionError(f"|I| = {len(I)} but d = {d}")
    return (d * (d + 1) // 2 + sum(I)) % 2


def dual_sign(I: Sequence[int]) -> int:
    return -1 if sign_exponent(I, len(I)) else 1


def sort_sign(seq: Sequence[int]) -> tuple[int, Subset]:
    """Sign of the sorting permutation and the sorted tuple (sign 0 on repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, tuple(sorted(seq))
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def index_name(I: Sequence[int], n: int | None = None) -> str:
    if n is not None and n >= 10:
        return ".".join(str(i) for i in I)
    return "".join(str(i) for i in I)


@dataclass(frozen=True)
class PlueckerVector:
    n: int
    d: int
    coeffs: tuple

    def __post_init__(self):
        from math import comb
        if len(self.coeffs) != comb(self.n, self.d):
            raise DimensionError(f"need C({self.n},{self.d}) coordinates, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))

    @classmethod
    def from_dict(cls, n: int, d: int, values: Mapping[Sequence[int], object]) -> "PlueckerVector":
        idx = subset_index(n, d)
        coeffs = [Fraction(0)] * len(idx)
        for I, v in values.items():
            coeffs[idx[check_subset(I, n)]] = as_fraction(v)
        return cls(n, d, tuple(coeffs))

    def subsets(self) -> tuple[Subset, ...]:
        return subsets(self.n, self.d)

    def __getitem__(self, I) -> Fraction:
        return self.coeffs[subset_index(self.n, self.d)[tuple(I)]]

    def coord(self, seq: Sequence[int]) -> Fraction:
        """Coordinate at an unsorted index sequence, with the alternating sign."""
        s, I = sort_sign(seq)
        return s * self[I] if s else Fraction(0)

    def items(self):
        return zip(self.subsets(), self.coeffs)

    def as_dict(self) -> dict[Subset, Fraction]:
        return dict(self.items())

    def support(self) -> tuple[Subset, ...]:
        return tuple(I for I, c in self.items() if c != 0)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def scaled(self, c) -> "PlueckerVector":
        c = as_fraction(c)
        return PlueckerVector(self.n, self.d, tuple(c * x for x in self.coeffs))

    def display_normalized(self) -> "PlueckerVector":
        """First nonzero coordinate scaled to 1 (display only)."""
        first = next((c for c in self.coeffs if c != 0), None)
        if first is None:
            return self
        return self.scaled(1 / first)

    def proportional_to(self, other: "PlueckerVector") -> Fraction | None:
        """Scalar c with other == c * self, or None."""
        if (self.n, self.d) != (other.n, other.d):
            return None
        ratio = None
        for a, b in zip(self.coeffs, other.coeffs):
            if a == 0 and b == 0:
                continue
            if a == 0 or b == 0:
                return None
            r = b / a
            if ratio is None:
                ratio = r
            elif r != ratio:
                return None
        return ratio

    def three_term_relations_hold(self) -> bool:
        """Spot check of the three-term Grassmann-Pluecker relations."""
        n, d = self.n, self.d
        if d < 2 or n - d < 2:
            return True
        for S in combinations(range(1, n + 1), d - 2):
            rest = [i for i in range(1, n + 1) if i not in S]
            for a, b, c, e in combinations(rest, 4):
                val = (self.coord(S + (a, b)) * self.coord(S + (c, e))
                       - self.coord(S + (a, c)) * self.coord(S + (b, e))
                       + self.coord(S + (a, e)) * self.coord(S + (b, c)))
                if val != 0:
                    return False
        return True

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d,
                "coords": {index_name(I, self.n): format_rational(c) for I, c in self.items()}}


def pluecker_from_matrix(a) -> PlueckerVector:
    """Maximal minors of a full-row-rank d x n matrix, lex ordered."""
    a = as_matrix(a)
    d, n = a.shape
    if d > n or rank(a) < d:
        raise PreconditionError(f"matrix of shape {d}x{n} does not have full row rank")
    cols = [a.col(j) for j in range(n)]
    coeffs = []
    for I in subsets(n, d):
        sub = RatMatrix(d, d, (cols[j - 1][i] for i in range(d) for j in I))
        coeffs.append(det_exact(sub))
    return PlueckerVector(n, d, tuple(coeffs))


def complement_pluecker(p: PlueckerVector) -> PlueckerVector:
    """p_J(L^perp) = (-1)^s([n] minus J) p_{[n] minus J}(L)."""
    n = p.n
    out = {}
    for J in subsets(n, n - p.d):
        Jc = complement(J, n)
        out[J] = dual_sign(Jc) * p[Jc]
    return PlueckerVector.from_dict(n, n - p.d, out)


def gamma_from_beta(beta: PlueckerVector) -> PlueckerVector:
    """Dual coordinates gamma_I = (-1)^s(I) beta_{[n] minus I}.

    For beta = p(M) with M in Gr(n-d, n) this is p(M^perp) up to scale.
    """
    n = beta.n
    d = n - beta.d
    return PlueckerVector.from_dict(n, d, {I: dual_sign(I) * beta[complement(I, n)]
                                           for I in subsets(n, d)})


def orthocomplement(a) -> tuple[RatMatrix, PlueckerVector]:
    """Kernel basis of a full-rank matrix and its Pluecker vector.

    The result is checked against the complement formula up to one global
    scalar.
    """
    a = as_matrix(a)
    d, n = a.shape
    if rank(a) < d:
        raise PreconditionError("orthocomplement needs a full-row-rank matrix")
    if d == n:
        raise PreconditionError("orthocomplement of the whole space is zero")
    k = nullspace(a)
    pk = pluecker_from_matrix(k)
    expected = complement_pluecker(pluecker_from_matrix(a))
    if expected.proportional_to(pk) is None:
        raise InternalInconsistencyError("kernel Pluecker vector disagrees with the complement formula")
    return k, pk


def pairing_transversal(pL: PlueckerVector, pMperp: PlueckerVector) -> Fraction:
    """sum_I p_I(L) p_I(M^perp); zero exactly when L and M meet."""
    if (pL.n, pL.d) != (pMperp.n, pMperp.d):
        raise DimensionError("pairing needs Pluecker vectors of the same Gr(d, n)")
    return sum((a * b for a, b in zip(pL.coeffs, pMperp.coeffs)), Fraction(0))


def wedge_coefficient(I: Sequence[int], vectors: Sequence[Sequence], n: int) -> Fraction:
    """e_I ^ u_1 ^ ... ^ u_m as a multiple of e_[n] (|I| + m = n)."""
    if len(I) + len(vectors) != n:
        raise DimensionError("wedge does not reach top degree")
    rows = [[1 if j == i else 0 for j in range(1, n + 1)] for i in I]
    rows += [list(v) for v in vectors]
    return det_exact(RatMatrix.from_rows(rows))


def wedge_vector(delta: Mapping[Subset, object], w: Sequence, n: int) -> dict[Subset, Fraction]:
    """Coefficients of delta ^ w for delta in wedge^m and a vector w."""
    m = None
    out: dict[Subset, Fraction] = {}
    for S, c in delta.items():
        c = as_fraction(c)
        if m is None:
            m = len(S)
        elif len(S) != m:
            raise DimensionError("delta is not homogeneous")
        if not c:
            continue
        for j in range(1, n + 1):
            wj = as_fraction(w[j - 1])
            if j in S or not wj:
                continue
            sign, J = sort_sign(tuple(S) + (j,))
            out[J] = out.get(J, Fraction(0)) + sign * c * wj
    return {J: v for J, v in out.items() if v}


def top_pairing(I: Sequence[int], beta: Mapping[Subset, object], n: int) -> Fraction:
    """e_I ^ beta as a multiple of e_[n], for beta in wedge^(n-|I|)."""
    Ic = complement(I, n)
    c = as_fraction(beta.get(Ic, 0))
    return dual_sign(I) * c if c else Fraction(0)
