"""Exact dense linear algebra over Q (and Q(i) where noted).

Elimination routines are written against the field operations only, so they
accept ``Fraction`` and ``GaussianRational`` entries alike.  The determinant is
fraction-free: rows are lifted to integers and Bareiss elimination runs on
Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionError, PivotError
from .rational import GaussianRational, as_fraction, rational_sqrt


def _coerce(x):
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    return as_fraction(x)


class RatMatrix:
    """Immutable row-major matrix with exact entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(_coerce(x) for x in entries)
        if len(entries) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        ncol = len(rows[0])
        if any(len(r) != ncol for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncol, (x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls(m, n, (0,) * (m * n))

    @classmethod
    def diagonal(cls, diag: Sequence) -> "RatMatrix":
        n = len(diag)
        return cls(n, n, (diag[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def tolist(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix(len(rows), len(cols), (self[i, j] for i in rows for j in cols))

    def select_columns(self, cols: Sequence[int]) -> "RatMatrix":
        return self.submatrix(range(self.rows), cols)

    def stack(self, other: "RatMatrix") -> "RatMatrix":
        if other.cols != self.cols:
            raise DimensionError("column counts differ")
        return RatMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                s = 0
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                out.append(s)
        return RatMatrix(self.rows, other.cols, out)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return RatMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return RatMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "RatMatrix":
        c = _coerce(c)
        return RatMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RatMatrix({self.tolist()!r})"

    def det(self):
        return det_exact(self)

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "RatMatrix":
        return inverse(self)

    def nullspace(self) -> "RatMatrix":
        return nullspace(self)


def as_matrix(m) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix.from_rows(m)


# --- determinants -----------------------------------------------------------

def bareiss_det_int(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (destroys ``rows``)."""
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * rows[n - 1][n - 1]


def det_exact(m) -> Fraction:
    """Exact determinant by integer lift + Bareiss elimination."""
    m = as_matrix(m)
    if not m.is_square():
        raise DimensionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    if any(isinstance(x, GaussianRational) for x in m.entries):
        return _det_by_elimination(m)
    scale = 1
    rows = []
    for i in range(m.rows):
        r = m.row(i)
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        scale *= den
        rows.append([int(x * den) for x in r])
    return Fraction(bareiss_det_int(rows), scale)


def _det_by_elimination(m: RatMatrix):
    a = m.tolist()
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((r for r in range(k, n) if a[r][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det = det * a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
    return det


# --- elimination ------------------------------------------------------------

def rref(m) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_matrix(m)
    a = m.tolist()
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c] if not isinstance(a[r][c], GaussianRational) else GaussianRational(1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ai, ar = a[i], a[r]
                a[i] = [x - f * y for x, y in zip(ai, ar)]
        pivots.append(c)
        r += 1
    return RatMatrix(nr, nc, (x for row in a for x in row)), pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m) -> RatMatrix:
    """Rows form a basis of {x : m x = 0}."""
    m = as_matrix(m)
    R, piv = rref(m)
    free = [c for c in range(m.cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i, f]
        basis.append(v)
    return RatMatrix(len(basis), m.cols, (x for v in basis for x in v))


def inverse(m) -> RatMatrix:
    m = as_matrix(m)
    if not m.is_square():
        raise DimensionError("inverse of non-square matrix")
    n = m.rows
    aug = RatMatrix.from_rows([list(m.row(i)) + [1 if i == j else 0 for j in range(n)]
                               for i in range(n)])
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R.submatrix(range(n), range(n, 2 * n))


def solve(m, b) -> RatMatrix:
    """Solve m X = b for square invertible m (b may have several columns)."""
    return inverse(m) @ as_matrix(b)


# --- LDL^T ------------------------------------------------------------------

@dataclass(frozen=True)
class LDLResult:
    L: RatMatrix
    D: tuple
    sqrt_D: tuple  # exact square roots of D entries, None where irrational

    @property
    def has_rational_cholesky(self) -> bool:
        return all(s is not None for s in self.sqrt_D)

    def cholesky_factor(self) -> RatMatrix:
        """L * diag(sqrt D); only when every D entry is a rational square."""
        if not self.has_rational_cholesky:
            raise ValueError("some pivot is not a rational square")
        n = self.L.rows
        return RatMatrix(n, n, (self.L[i, j] * self.sqrt_D[j] for i in range(n) for j in range(n)))


def ldl_decompose(g) -> LDLResult:
    """Unpivoted LDL^T of a symmetric matrix.

    Raises PivotError when a zero pivot would have to be divided by; callers
    are expected to fall back to a floating factorization in that case.
    """
    g = as_matrix(g)
    if not g.is_symmetric():
        raise DimensionError("ldl_decompose needs a symmetric matrix")
    n = g.rows
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = []
    for j in range(n):
        dj = g[j, j] - sum((L[j][k] * L[j][k] * D[k] for k in range(j)), Fraction(0))
        D.append(dj)
        if dj == 0:
            if any(g[i, j] - sum((L[i][k] * L[j][k] * D[k] for k in range(j)), Fraction(0)) != 0
                   for i in range(j + 1, n)):
                raise PivotError(f"zero leading principal minor at index {j}")
            continue
        for i in range(j + 1, n):
            s = g[i, j] - sum((L[i][k] * L[j][k] * D[k] for k in range(j)), Fraction(0))
            L[i][j] = s / dj
    Lm = RatMatrix.from_rows(L)
    return LDLResult(Lm, tuple(D), tuple(rational_sqrt(x) for x in D))


# --- Smith normal form ------------------------------------------------------

def smith_normal_form(m) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (length min(rows, cols)).

    Nonnegative; trailing zeros for rank deficiency.
    """
    if isinstance(m, RatMatrix):
        rows = m.tolist()
    else:
        rows = [list(r) for r in m]
    a = []
    for r in rows:
        rr = []
        for x in r:
            if type(x) is int:
                rr.append(x)
                continue
            f = as_fraction(x)
            if f.denominator != 1:
                raise ValueError("smith_normal_form needs integer entries")
            rr.append(f.numerator)
        a.append(rr)
    nr = len(a)
    nc = len(a[0]) if nr else 0
    t = 0
    diag = []
    while t < min(nr, nc):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # divisibility of the rest of the block by the pivot
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero in row/col t into the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i, j = min(cands)
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    diag += [0] * (min(nr, nc) - len(diag))
    return diag


def content_gcd(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
