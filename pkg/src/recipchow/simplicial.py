"""Complete simplicial complexes, spanning forests and the monomial expansion
of the Chow form in the uniform case.

For K_n^{d-1} (all d-subsets of [n]) the boundary operator has rows indexed
by (d-1)-subsets and columns by d-subsets.  Deleting the rows that contain n
leaves a matrix V whose columns are the vectors v_I of the uniform case, and
the spanning forests are the column sets F with det(V_F) != 0.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Mapping, Sequence

from .detrep import VectorTable, alpha_name, gamma_name
from .errors import DimensionError, InternalInconsistencyError, PreconditionError
from .exterior import Subset, subsets
from .linalg import RatMatrix, as_matrix, bareiss_det_int, smith_normal_form
from .poly import MultiPoly
from .rational import as_fraction
from .unipoly import sylvester_resultant

# 2^61 - 1; forest detection works modulo this prime (see _check_prime_safe)
PRIME = (1 << 61) - 1
FOREST_COLUMN_LIMIT = 20


def threads() -> int:
    try:
        return max(1, int(os.environ.get("RECIPCHOW_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class BoundaryMatrix:
    n: int
    d: int                 # columns are d-subsets, rows (d-1)-subsets
    row_labels: tuple
    col_labels: tuple
    matrix: RatMatrix

    def reduced(self) -> tuple[tuple, RatMatrix]:
        """Rows not containing n: the matrix V."""
        keep = [i for i, I in enumerate(self.row_labels) if self.n not in I]
        return (tuple(self.row_labels[i] for i in keep),
                self.matrix.submatrix(keep, range(self.matrix.cols)))


@lru_cache(maxsize=None)
def boundary_matrix(n: int, d: int) -> BoundaryMatrix:
    """Boundary operator from d-subsets to (d-1)-subsets of [n].

    Entry (I, J) is (-1)^j when I is J with its j-th element (0-based) removed.
    """
    if not 1 <= d <= n:
        raise DimensionError(f"need 1 <= d <= n, got d={d}, n={n}")
    rows = subsets(n, d - 1)
    cols = subsets(n, d)
    ridx = {I: i for i, I in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    for c, J in enumerate(cols):
        for j in range(d):
            I = J[:j] + J[j + 1:]
            entries[ridx[I]][c] = -1 if j % 2 else 1
    return BoundaryMatrix(n, d, rows, cols, RatMatrix.from_rows(entries))


def uniform_v_vectors(n: int, d: int) -> VectorTable:
    """Closed-form vectors of the uniform matroid U(d, n).

    Coordinates are indexed by K in binom([n-1], d-1), i.e. by the facets
    K + {n}.  v_I = e_{I - n} if n is in I, else sum_i (-1)^pos(i) e_{I - i}
    with pos the 1-based position of i in I.
    """
    if not 2 <= d < n:
        raise DimensionError(f"need 2 <= d < n, got d={d}, n={n}")
    coords = subsets(n - 1, d - 1)
    cidx = {K: a for a, K in enumerate(coords)}
    k = len(coords)
    vecs = {}
    for I in subsets(n, d):
        v = [Fraction(0)] * k
        if n in I:
            v[cidx[I[:-1]]] = Fraction(1)
        else:
            for pos, i in enumerate(I, start=1):
                v[cidx[I[:pos - 1] + I[pos:]]] = Fraction(-1 if pos % 2 else 1)
        vecs[I] = tuple(v)
    facets = tuple(K + (n,) for K in coords)
    return VectorTable(k, facets, vecs)


def _int_columns(n: int, d: int) -> tuple[list[tuple[int, ...]], tuple]:
    _, V = boundary_matrix(n, d).reduced()
    cols = [tuple(int(V[i, j]) for i in range(V.rows)) for j in range(V.cols)]
    return cols, boundary_matrix(n, d).col_labels


def _check_prime_safe(n: int, d: int) -> None:
    # every column of V has at most d entries of size 1, so Hadamard's bound
    # gives |minor| <= d^(k/2); a nonzero minor is then nonzero mod PRIME
    k = comb(n - 1, d - 1)
    if d ** k >= PRIME ** 2:
        raise PreconditionError(f"K_{n}^{d - 1} too large for modular forest detection")


def _reduce(vec: list[int], basis: list[tuple[int, list[int]]]) -> list[int]:
    v = list(vec)
    for piv, b in basis:
        c = v[piv]
        if c:
            v = [(x - c * y) % PRIME for x, y in zip(v, b)]
    return v


def _forest_dfs(cols: list[tuple[int, ...]], k: int, first: int | None = None) -> list[tuple[int, ...]]:
    """Index sets of k linearly independent columns (mod PRIME)."""
    m = len(cols)
    out: list[tuple[int, ...]] = []
    modcols = [[x % PRIME for x in c] for c in cols]

    def extend(start, chosen, basis):
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        need = k - len(chosen)
        for j in range(start, m - need + 1):
            r = _reduce(modcols[j], basis)
            piv = next((i for i, x in enumerate(r) if x), None)
            if piv is None:
                continue
            inv = pow(r[piv], PRIME - 2, PRIME)
            r = [(x * inv) % PRIME for x in r]
            # keep the basis fully reduced at the new pivot
            nb = [(p, [(x - b[piv] * y) % PRIME for x, y in zip(b, r)]) for p, b in basis]
            nb.append((piv, r))
            chosen.append(j)
            extend(j + 1, chosen, nb)
            chosen.pop()

    if first is None:
        extend(0, [], [])
    else:
        r = modcols[first]
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is not None:
            inv = pow(r[piv], PRIME - 2, PRIME)
            extend(first + 1, [first], [(piv, [(x * inv) % PRIME for x in r])])
    return out


@dataclass(frozen=True)
class Forest:
    faces: tuple          # d-subsets
    det: int              # det(V_F), sign depends on column order
    coefficient: int      # c_F = det^2

    def vertex_degree(self, i: int) -> int:
        return sum(1 for I in self.faces if i in I)


def _coefficient(cols: list, idx: tuple[int, ...]) -> tuple[int, int]:
    k = len(idx)
    rows = [[cols[j][r] for j in idx] for r in range(k)]
    det = bareiss_det_int([list(r) for r in rows])
    if det == 0:
        raise InternalInconsistencyError("modular forest test accepted a singular column set")
    factors = smith_normal_form(rows)
    snf = prod(factors)
    if snf != abs(det):
        raise InternalInconsistencyError(
            f"|det V_F| = {abs(det)} but the cokernel has order {snf}")
    return det, det * det


@lru_cache(maxsize=None)
def spanning_forests(n: int, d: int) -> tuple[Forest, ...]:
    """All spanning forests of K_n^{d-1} with c_F computed two ways.

    c_F = det(V_F)^2, and |det V_F| is checked against the order of the
    cokernel of V_F (product of its Smith invariant factors).
    """
    if not 2 <= d < n:
        raise DimensionError(f"need 2 <= d < n, got d={d}, n={n}")
    if comb(n, d) > FOREST_COLUMN_LIMIT:
        raise PreconditionError(
            f"C({n},{d}) = {comb(n, d)} columns exceeds the enumeration limit {FOREST_COLUMN_LIMIT}")
    _check_prime_safe(n, d)
    cols, labels = _int_columns(n, d)
    k = comb(n - 1, d - 1)
    workers = threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda f: _forest_dfs(cols, k, f), range(len(cols))))
        index_sets = [s for part in parts for s in part]
    else:
        index_sets = _forest_dfs(cols, k)
    forests = []
    for idx in index_sets:
        det, c = _coefficient(cols, idx)
        forests.append(Forest(tuple(labels[j] for j in idx), det, c))
    return tuple(forests)


def forest_coefficient(n: int, d: int, faces: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(det V_F, product of SNF invariant factors) for an explicit face set."""
    cols, labels = _int_columns(n, d)
    where = {I: j for j, I in enumerate(labels)}
    idx = [where[tuple(sorted(I))] for I in faces]
    k = len(idx)
    if k != comb(n - 1, d - 1):
        raise DimensionError(f"a spanning forest has {comb(n - 1, d - 1)} faces, got {k}")
    rows = [[cols[j][r] for j in idx] for r in range(k)]
    det = bareiss_det_int([list(r) for r in rows])
    return det, prod(smith_normal_form(rows))


def forest_expansion(n: int, d: int, alpha: Mapping[Subset, object] | None = None,
                     gamma: Mapping[Subset, object] | None = None) -> MultiPoly:
    """sum_F c_F prod_{I in F} gamma_I prod_{I not in F} alpha_I.

    ``alpha``/``gamma`` map d-subsets to numbers; a missing mapping keeps the
    corresponding coordinates symbolic (variables a_I / g_I).
    """
    labels = subsets(n, d)
    vars: list[str] = []
    if alpha is None:
        vars += [alpha_name(I, n) for I in labels]
    if gamma is None:
        vars += [gamma_name(I, n) for I in labels]
    index = {v: i for i, v in enumerate(vars)}
    a = None if alpha is None else {I: as_fraction(alpha[I]) for I in labels}
    g = None if gamma is None else {I: as_fraction(gamma[I]) for I in labels}
    terms: dict = {}
    for F in spanning_forests(n, d):
        inF = set(F.faces)
        coeff = Fraction(F.coefficient)
        e = [0] * len(vars)
        for I in labels:
            if I in inF:
                if g is None:
                    e[index[gamma_name(I, n)]] = 1
                else:
                    coeff *= g[I]
            elif a is None:
                e[index[alpha_name(I, n)]] = 1
            else:
                coeff *= a[I]
            if not coeff:
                break
        if coeff:
            key = tuple(e)
            terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(vars, terms)


def minors_2xn(m) -> dict[Subset, Fraction]:
    """All 2x2 minors of a 2 x n matrix (no rank requirement)."""
    m = as_matrix(m)
    if m.rows != 2:
        raise DimensionError("need a 2 x n matrix")
    return {(i, j): m[0, i - 1] * m[1, j - 1] - m[0, j - 1] * m[1, i - 1]
            for (i, j) in subsets(m.cols, 2)}


def _check_distinct_roots(a) -> dict:
    pa = minors_2xn(a)
    bad = [I for I, v in pa.items() if v == 0]
    if bad:
        raise PreconditionError(f"linear forms {bad[0]} have a common root")
    return pa


def tree_resultant(a, c) -> Fraction:
    """sum over spanning trees T of K_n of prod_{ij in T} p_ij(c) prod_{kl not in T} p_kl(a)."""
    a, c = as_matrix(a), as_matrix(c)
    if a.shape != c.shape or a.rows != 2:
        raise DimensionError("a and c must both be 2 x n")
    n = a.cols
    if n < 2:
        raise DimensionError("need n >= 2")
    pa = _check_distinct_roots(a)
    pc = minors_2xn(c)
    if n == 2:
        return pc[(1, 2)]
    p = forest_expansion(n, 2, alpha=pa, gamma=pc)
    return as_fraction(p.terms().get((), 0))


def _linear_forms(a) -> list[list[Fraction]]:
    a = as_matrix(a)
    return [[a[0, j], a[1, j]] for j in range(a.cols)]


def _mul_binary(f: list, g: list) -> list:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return out


def fiber_binary_forms(a, c) -> list[list[Fraction]]:
    """Forms f_r = sum_i c_ri prod_{j != i} l_j, as s-major coefficient lists.

    l_j = a_1j s + a_2j t.  Each f_r has degree n - 1 (leading zeros kept).
    """
    a, c = as_matrix(a), as_matrix(c)
    lf = _linear_forms(a)
    n = a.cols
    out = []
    for r in range(c.rows):
        acc = [Fraction(0)] * n
        for i in range(n):
            ci = c[r, i]
            if not ci:
                continue
            term = [Fraction(1)]
            for j in range(n):
                if j != i:
                    term = _mul_binary(term, lf[j])
            for t, x in enumerate(term):
                acc[t] += ci * x
        out.append(acc)
    return out


def form_resultant(a, c) -> Fraction:
    """Sylvester resultant of the two binary forms represented by (a, c)."""
    f, g = fiber_binary_forms(a, c)
    return sylvester_resultant(f, g, degree=as_matrix(a).cols - 1)


def resultant_constant(a, c) -> Fraction | None:
    """tree_resultant / form_resultant, or None when both vanish."""
    t = tree_resultant(a, c)
    s = form_resultant(a, c)
    if s == 0:
        if t != 0:
            raise InternalInconsistencyError("tree sum is nonzero but the forms share a root")
        return None
    if t == 0:
        raise InternalInconsistencyError("tree sum vanishes but the forms have no common root")
    return t / s
