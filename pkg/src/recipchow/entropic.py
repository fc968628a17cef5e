"""Multiplication matrices on the coordinate ring of L^{-1}, the trace form H
and the entropic discriminant det(H) with its sum-of-squares certificate.

Frame: v_1..v_d span L (rows of the input), v_{d+1}..v_n span L^perp, and
y_1..y_n are the coordinates in that basis, x = sum_i y_i v_i.  With phi the determinantal representation,

    G     = phi(v_{d+1} ^ ... ^ v_n)                     (positive definite)
    Psi_j = (-1)^(n-j-1) sum_{i<=d} y_i phi(w_j ^ v_i)    (w_j omits v_j)
    M_j   = Psi_j G^{-1}

M_j is similar to the symmetric matrix A_j = Q^{-1} Psi_j Q^{-T} for any
Q Q^T = G, so traces of products of the M_j are those of the A_j and are
exact rationals even when Q needs square roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, isqrt, prod
from typing import Mapping, Sequence

import numpy as np

from .detrep import LinearSpace, v_vectors
from .errors import (DimensionError, InternalInconsistencyError, PivotError,
                     PreconditionError)
from .exterior import subsets, wedge_coefficient
from .linalg import RatMatrix, as_matrix, inverse, ldl_decompose, nullspace, rank
from .poly import MultiPoly, det_poly
from .rational import as_fraction

DEFAULT_TOLERANCE = 1e-9
MAX_MINORS = 1_000_000
INTEGER_SEARCH_MAX_DIAG = 64
INTEGER_SEARCH_MAX_K = 6
INTEGER_SEARCH_BUDGET = 200_000


def y_names(n: int) -> list[str]:
    return [f"y{i}" for i in range(1, n + 1)]


# --- matrices with polynomial entries --------------------------------------

def _mat_mul(a, b):
    k = len(a)
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(a[i], cols[j])), Fraction(0)) for j in range(k)] for i in range(k)]


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _is_zero(a):
    return all(x == 0 for r in a for x in r)


@dataclass(frozen=True)
class PolyMatrix:
    """k x k matrix of forms in y_1..y_d: monomial exponent tuple -> coefficient matrix."""

    k: int
    nvars: int
    terms: dict = field(hash=False)

    @classmethod
    def identity(cls, k: int, nvars: int) -> "PolyMatrix":
        one = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
        return cls(k, nvars, {(0,) * nvars: one})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "PolyMatrix":
        """sum_i y_i coeffs[i]."""
        nvars = len(coeffs)
        k = len(coeffs[0])
        terms = {}
        for i, c in enumerate(coeffs):
            rows = [list(map(as_fraction, r)) for r in c]
            if not _is_zero(rows):
                terms[tuple(int(j == i) for j in range(nvars))] = rows
        return cls(k, nvars, terms)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        out: dict = {}
        for ea, a in self.terms.items():
            for eb, b in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                p = _mat_mul(a, b)
                out[e] = _mat_add(out[e], p) if e in out else p
        return PolyMatrix(self.k, self.nvars, {e: m for e, m in out.items() if not _is_zero(m)})

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def transform(self, left, right) -> "PolyMatrix":
        """left * self * right, coefficientwise."""
        out = {}
        for e, m in self.terms.items():
            r = _mat_mul(_mat_mul(left, m), right)
            if not _is_zero(r):
                out[e] = r
        return PolyMatrix(self.k, self.nvars, out)

    def trace(self, vars: Sequence[str]) -> MultiPoly:
        return MultiPoly(vars, {e: sum((m[i][i] for i in range(self.k)), Fraction(0))
                                for e, m in self.terms.items()})

    def entry(self, i: int, j: int, vars: Sequence[str]) -> MultiPoly:
        return MultiPoly(vars, {e: m[i][j] for e, m in self.terms.items()})

    def entries(self, vars: Sequence[str]) -> list[list[MultiPoly]]:
        return [[self.entry(i, j, vars) for j in range(self.k)] for i in range(self.k)]

    def is_symmetric(self) -> bool:
        return all(m[i][j] == m[j][i] for m in self.terms.values()
                   for i in range(self.k) for j in range(i))

    def at(self, point: Sequence[float]) -> np.ndarray:
        out = np.zeros((self.k, self.k))
        for e, m in self.terms.items():
            out += float(prod(p ** x for p, x in zip(point, e))) * np.array(m, dtype=float)
        return out


# --- the frame and the multiplication matrices ------------------------------

@dataclass(frozen=True)
class AdaptedFrame:
    space_rows: tuple      # v_1..v_d
    perp_rows: tuple       # v_{d+1}..v_n

    @property
    def n(self) -> int:
        return len(self.space_rows[0])

    @property
    def d(self) -> int:
        return len(self.space_rows)

    def vectors(self) -> list[tuple]:
        return list(self.space_rows) + list(self.perp_rows)

    def to_json(self) -> dict:
        from .rational import format_rational
        return {"space": [[format_rational(x) for x in r] for r in self.space_rows],
                "perp": [[format_rational(x) for x in r] for r in self.perp_rows]}


def adapted_frame(L: LinearSpace, perp=None) -> AdaptedFrame:
    """Rows of L and a basis of L^perp (the given one, else the reduced kernel basis)."""
    if perp is None:
        K = nullspace(L.mat)
    else:
        K = as_matrix(perp)
        if K.cols != L.n or K.rows != L.n - L.d:
            raise DimensionError(f"perp basis must be {L.n - L.d} x {L.n}")
        if any(x != 0 for x in (L.mat @ K.transpose()).entries):
            raise PreconditionError("perp rows are not orthogonal to the space")
    frame = AdaptedFrame(tuple(L.mat.row(i) for i in range(L.d)),
                         tuple(K.row(i) for i in range(K.rows)))
    if rank(RatMatrix.from_rows(frame.vectors())) != L.n:
        raise PreconditionError("frame vectors are not a basis")
    return frame


@dataclass(frozen=True)
class MultMatrices:
    frame: AdaptedFrame
    k: int
    gram: RatMatrix                 # G
    psi: dict = field(hash=False)   # j -> PolyMatrix Psi_j
    mult: dict = field(hash=False)  # j -> PolyMatrix M_j = Psi_j G^{-1}

    @property
    def vars(self) -> list[str]:
        return y_names(self.frame.d)


def _require_uniform(L: LinearSpace) -> None:
    zeros = [I for I, c in L.plucker.items() if c == 0]
    if zeros:
        raise PreconditionError(
            f"entropic discriminant needs all Pluecker coordinates nonzero; p_{zeros[0]} = 0")


def _phi_value(table, alpha, vectors: Sequence, n: int) -> list[list[Fraction]]:
    """phi(u_1 ^ ... ^ u_m) as a k x k rational matrix."""
    k = table.k
    out = [[Fraction(0)] * k for _ in range(k)]
    for I, v in table.vectors.items():
        c = wedge_coefficient(I, vectors, n)
        if not c:
            continue
        w = c / alpha[I]
        for a in range(k):
            if v[a]:
                for b in range(k):
                    if v[b]:
                        out[a][b] += w * v[a] * v[b]
    return out


def _definiteness(G: RatMatrix) -> int:
    """+1 / -1 for a positive / negative definite G, else PreconditionError."""
    try:
        D = ldl_decompose(G).D
    except PivotError:
        D = (Fraction(0),)
    if all(x > 0 for x in D):
        return 1
    if all(x < 0 for x in D):
        return -1
    raise PreconditionError("G = phi(L^perp) is not definite; the input does not give a definite representation")


def mult_matrices(L: LinearSpace, perp=None) -> MultMatrices:
    _require_uniform(L)
    n, d = L.n, L.d
    frame = adapted_frame(L, perp)
    table = v_vectors(L.matroid)
    alpha = L.plucker
    vs = frame.vectors()
    G = RatMatrix.from_rows(_phi_value(table, alpha, vs[d:], n))
    sign = _definiteness(G)
    if sign < 0:
        # opposite orientation of L^perp: flip the last vector so G > 0
        perp_rows = list(frame.perp_rows[:-1]) + [tuple(-x for x in frame.perp_rows[-1])]
        frame = AdaptedFrame(frame.space_rows, tuple(perp_rows))
        vs = frame.vectors()
        G = RatMatrix.from_rows(_phi_value(table, alpha, vs[d:], n))
    Ginv_rows = inverse(G).tolist()
    psi, mult = {}, {}
    for j in range(d + 1, n + 1):
        w = [vs[t - 1] for t in range(d + 1, n + 1) if t != j]
        sign = -1 if (n - j - 1) % 2 else 1
        coeffs = []
        for i in range(1, d + 1):
            m = _phi_value(table, alpha, w + [vs[i - 1]], n)
            coeffs.append([[sign * x for x in r] for r in m])
        P = PolyMatrix.linear(coeffs)
        psi[j] = P
        ident = [[Fraction(int(a == b)) for b in range(table.k)] for a in range(table.k)]
        mult[j] = P.transform(ident, Ginv_rows)
    mm = MultMatrices(frame, table.k, G, psi, mult)
    _check_commuting(mm)
    return mm


def _check_commuting(mm: MultMatrices) -> None:
    js = sorted(mm.mult)
    for a, b in combinations(js, 2):
        if mm.mult[a] * mm.mult[b] != mm.mult[b] * mm.mult[a]:
            raise InternalInconsistencyError(f"M_{a} and M_{b} do not commute")


# --- trace form ------------------------------------------------------------

def monomial_basis(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponents a in N^(n-d) with |a| <= d-1, by degree then y_{d+1} first."""
    out = []
    for deg in range(d):
        level = [a for a in product(range(deg + 1), repeat=n - d) if sum(a) == deg]
        out += sorted(level, reverse=True)
    return out


def monomial_label(a: Sequence[int], d: int) -> str:
    parts = []
    for t, e in enumerate(a):
        if e:
            parts.append(f"y{d + 1 + t}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) or "1"


def _basis_products(mats: Mapping[int, PolyMatrix], n: int, d: int, k: int) -> list[PolyMatrix]:
    basis = monomial_basis(n, d)
    if len(basis) != k:
        raise InternalInconsistencyError(f"{len(basis)} basis monomials but module rank {k}")
    out = []
    for a in basis:
        B = PolyMatrix.identity(k, d)
        for t, e in enumerate(a):
            for _ in range(e):
                B = B * mats[d + 1 + t]
        out.append(B)
    return out


@dataclass(frozen=True)
class TraceForm:
    basis: tuple
    H: tuple                  # rows of MultiPoly
    det_raw: MultiPoly
    det_normalized: MultiPoly

    def matrix(self) -> list[list[MultiPoly]]:
        return [list(r) for r in self.H]


def trace_form_disc(L: LinearSpace, perp=None, mm: MultMatrices | None = None) -> TraceForm:
    mm = mm or mult_matrices(L, perp)
    n, d, k = L.n, L.d, mm.k
    vars = mm.vars
    Bs = _basis_products(mm.mult, n, d, k)
    H = [[None] * k for _ in range(k)]
    for a in range(k):
        for b in range(a, k):
            t = (Bs[a] * Bs[b]).trace(vars)
            H[a][b] = H[b][a] = t
    if H[0][0] != MultiPoly.constant(k, vars):
        raise InternalInconsistencyError("H_11 differs from the module rank")
    det = det_poly(H).with_vars(vars)
    return TraceForm(tuple(monomial_basis(n, d)), tuple(tuple(r) for r in H), det, det.normalized())


# --- rational square roots of G ---------------------------------------------

def _integer_vectors_of_norm(k: int, target: int):
    """All v in Z^k with v.v == target."""
    def rec(i, left):
        if i == k - 1:
            r = isqrt(left)
            for s in {r, -r}:
                if s * s == left:
                    yield (s,)
            return
        b = isqrt(left)
        for x in range(-b, b + 1):
            if x * x <= left:
                for rest in rec(i + 1, left - x * x):
                    yield (x,) + rest
    yield from rec(0, target)


def _integer_factor_search(G: RatMatrix) -> RatMatrix | None:
    from math import lcm
    k = G.rows
    den = 1
    for x in G.entries:
        den = lcm(den, x.denominator)
    Gi = [[int(G[i, j] * den * den) for j in range(k)] for i in range(k)]
    if min(Gi[i][i] for i in range(k)) < 0:
        return None
    if k > INTEGER_SEARCH_MAX_K or max(Gi[i][i] for i in range(k)) > INTEGER_SEARCH_MAX_DIAG:
        return None
    cands = [list(_integer_vectors_of_norm(k, Gi[i][i])) for i in range(k)]

    budget = [INTEGER_SEARCH_BUDGET]

    def rec(i, rows):
        if i == k:
            return rows
        for v in cands[i]:
            budget[0] -= 1
            if budget[0] < 0:
                return None
            if all(sum(a * b for a, b in zip(v, rows[j])) == Gi[i][j] for j in range(i)):
                found = rec(i + 1, rows + [v])
                if found is not None:
                    return found
        return None

    rows = rec(0, [])
    if rows is None:
        return None
    Q = RatMatrix.from_rows([[Fraction(x, den) for x in r] for r in rows])
    if rank(Q) != k:
        return None
    return Q


def rational_factor(G: RatMatrix) -> RatMatrix | None:
    """Some rational Q with Q Q^T = G, or None if none was found.

    First LDL^T with square pivots, then a bounded search for integer rows.
    """
    try:
        res = ldl_decompose(G)
        if res.has_rational_cholesky:
            return res.cholesky_factor()
    except PivotError:
        pass
    return _integer_factor_search(G)


# --- sum of squares ---------------------------------------------------------

@dataclass(frozen=True)
class SOSCertificate:
    mode: str                        # "exact" | "floating"
    squares: tuple                   # MultiPoly (exact) or coefficient dicts (floating)
    det: MultiPoly                   # raw det(H)
    factor: RatMatrix | None = None  # Q with Q Q^T = G (exact mode)
    residual: float = 0.0
    minors_total: int = 0

    def sum_of_squares(self) -> MultiPoly:
        if self.mode != "exact":
            raise PreconditionError("exact sum only available in exact mode")
        total = MultiPoly.zero(self.det.vars)
        for q in self.squares:
            total = total + q * q
        return total

    def evaluate(self, point: Sequence) -> object:
        if self.mode == "exact":
            vals = {v: as_fraction(x) for v, x in zip(self.det.vars, point)}
            return sum((q.evaluate(vals) ** 2 for q in self.squares), Fraction(0))
        total = 0.0
        for coeffs in self.squares:
            s = sum(c * prod(float(p) ** e for p, e in zip(point, exps)) for exps, c in coeffs.items())
            total += s * s
        return total


def _homogeneous_exponents(nvars: int, deg: int) -> list[tuple[int, ...]]:
    return sorted((a for a in product(range(deg + 1), repeat=nvars) if sum(a) == deg), reverse=True)


def sos_certificate(L: LinearSpace, tolerance: float = DEFAULT_TOLERANCE, perp=None,
                    mm: MultMatrices | None = None, tf: TraceForm | None = None,
                    force_floating: bool = False, seed: int = 0) -> SOSCertificate:
    """det(H) as a sum of squares of the maximal minors of U = (vec B_a)_a."""
    mm = mm or mult_matrices(L, perp)
    tf = tf or trace_form_disc(L, mm=mm)
    n, d, k = L.n, L.d, mm.k
    vars = mm.vars
    total = comb(k * k, k)
    if total > MAX_MINORS:
        raise PreconditionError(f"{total} maximal minors exceeds the limit {MAX_MINORS}")
    if k == 1:                       # U = (1) whatever the factor
        Q = RatMatrix.identity(1)
    else:
        Q = None if force_floating else rational_factor(mm.gram)
    if Q is not None:
        return _exact_sos(mm, tf, Q, n, d, k, vars, total)
    return _floating_sos(mm, tf, n, d, k, tolerance, total, seed)


def _exact_sos(mm, tf, Q, n, d, k, vars, total) -> SOSCertificate:
    Qinv = inverse(Q).tolist()
    QinvT = [list(r) for r in zip(*Qinv)]
    A = {j: P.transform(Qinv, QinvT) for j, P in mm.psi.items()}
    for j, Aj in A.items():
        if not Aj.is_symmetric():
            raise InternalInconsistencyError(f"A_{j} is not symmetric")
    Bs = _basis_products(A, n, d, k)
    U = []
    for B in Bs:
        ent = B.entries(vars)
        U.append([ent[i][j] for i in range(k) for j in range(k)])
    squares = []
    for cols in combinations(range(k * k), k):
        q = det_poly([[U[r][c] for c in cols] for r in range(k)]).with_vars(vars)
        if not q.is_zero():
            squares.append(q)
    cert = SOSCertificate("exact", tuple(squares), tf.det_raw, Q, 0.0, total)
    if cert.sum_of_squares() != tf.det_raw:
        raise InternalInconsistencyError("sum of squared minors differs from det(H)")
    return cert


def _floating_sos(mm, tf, n, d, k, tolerance, total, seed) -> SOSCertificate:
    G = np.array([[float(x) for x in r] for r in mm.gram.tolist()])
    try:
        Qf = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise PreconditionError(f"floating Cholesky factorization failed: {exc}") from None
    Qinv = np.linalg.inv(Qf)
    basis = monomial_basis(n, d)
    deg = sum(sum(a) for a in basis)
    exps = _homogeneous_exponents(d, deg)
    rng = np.random.default_rng(seed)
    npts = 2 * len(exps) + 2
    pts = rng.standard_normal((npts, d))
    cols = list(combinations(range(k * k), k))
    col_idx = np.array(cols)
    values = np.empty((npts, len(cols)))
    for p, pt in enumerate(pts):
        A = {j: Qinv @ P.at(pt) @ Qinv.T for j, P in mm.psi.items()}
        rows = []
        for a in basis:
            B = np.eye(k)
            for t, e in enumerate(a):
                for _ in range(e):
                    B = B @ A[d + 1 + t]
            rows.append(B.reshape(-1))
        U = np.array(rows)
        subs = U[:, col_idx].transpose(1, 0, 2)          # (minors, k, k)
        values[p] = np.linalg.det(subs)
    vander = np.array([[prod(x ** e for x, e in zip(pt, ex)) for ex in exps] for pt in pts])
    coeffs, *_ = np.linalg.lstsq(vander, values, rcond=None)   # (len(exps), minors)
    scale = np.abs(coeffs).max() if coeffs.size else 0.0
    keep = [m for m in range(len(cols)) if np.abs(coeffs[:, m]).max() > 1e-12 * max(scale, 1.0)]
    C = coeffs[:, keep]
    gram = C @ C.T
    sq_exps = _homogeneous_exponents(d, 2 * deg)
    where = {e: i for i, e in enumerate(sq_exps)}
    sos_vec = np.zeros(len(sq_exps))
    for a, ea in enumerate(exps):
        for b, eb in enumerate(exps):
            sos_vec[where[tuple(x + y for x, y in zip(ea, eb))]] += gram[a, b]
    det_terms = tf.det_raw.terms()
    det_vec = np.array([float(det_terms.get(e, 0)) for e in sq_exps])
    if any(e not in where for e in det_terms):
        raise InternalInconsistencyError("det(H) has unexpected degree")
    norm = np.linalg.norm(det_vec)
    residual = float(np.linalg.norm(sos_vec - det_vec) / (norm if norm else 1.0))
    squares = tuple({e: float(c) for e, c in zip(exps, C[:, m]) if c != 0.0} for m in range(C.shape[1]))
    cert = SOSCertificate("floating", squares, tf.det_raw, None, residual, total)
    if residual >= tolerance:
        raise InternalInconsistencyError(f"floating SOS residual {residual:.3e} exceeds {tolerance:.1e}")
    return cert


# --- discriminant oracle for d = 2 ------------------------------------------

def fiber_coefficients(v1: Sequence, v2: Sequence, c: Sequence) -> list:
    """Coefficients (s-major) of sum_j c_j prod_{i != j} (v1_i s + v2_i t).

    Entries of ``c`` may be numbers or MultiPoly.
    """
    n = len(v1)
    out = [0] * n
    for j in range(n):
        poly = [Fraction(1)]
        for i in range(n):
            if i == j:
                continue
            a, b = as_fraction(v1[i]), as_fraction(v2[i])
            nxt = [Fraction(0)] * (len(poly) + 1)
            for t, x in enumerate(poly):
                nxt[t] += x * a
                nxt[t + 1] += x * b
            poly = nxt
        for t, x in enumerate(poly):
            if x:
                out[t] = out[t] + c[j] * x
    return out


def disc_oracle_d2(L: LinearSpace) -> MultiPoly:
    """Discriminant of the fiber form over (y1 : y2), as a form of degree 2n-4.

    With x = sum y_i v_i, the pairings z_i = v_i.x are z = Gram(v1, v2) y.  The
    fiber of L^{-1} over (y1 : y2) consists of 1/l with l = s v1 + t v2 in L
    and z2 v1.(1/l) = z1 v2.(1/l); clearing denominators gives a binary form
    of degree n-1 with coefficient vector c = z2 v1 - z1 v2.  Its discriminant
    is Res(f, df/ds) / f(1, 0) up to the sign (-1)^(m(m-1)/2), m = n-1.
    """
    if L.d != 2:
        raise PreconditionError("the fiber discriminant oracle needs d = 2")
    _require_uniform(L)
    n = L.n
    vars = y_names(2)
    y1, y2 = MultiPoly.var("y1", vars), MultiPoly.var("y2", vars)
    v1, v2 = L.mat.row(0), L.mat.row(1)
    dot = lambda a, b: sum((x * y for x, y in zip(a, b)), Fraction(0))
    z1 = y1 * dot(v1, v1) + y2 * dot(v1, v2)
    z2 = y1 * dot(v1, v2) + y2 * dot(v2, v2)
    c = [z2 * v1[j] - z1 * v2[j] for j in range(n)]
    f = [MultiPoly.coerce(x, vars) for x in fiber_coefficients(v1, v2, c)]
    m = n - 1
    lead_idx, deriv = 0, [f[t] * (m - t) for t in range(m)]          # d/ds
    if f[0].is_zero():
        f = f[::-1]                                                   # swap s and t
        deriv = [f[t] * (m - t) for t in range(m)]
        if f[0].is_zero():
            raise PreconditionError("fiber form vanishes at both [1:0] and [0:1]")
    size = 2 * m - 1
    zero = MultiPoly.zero(vars)
    rows = []
    for i in range(m - 1):
        rows.append([zero] * i + f + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + deriv + [zero] * (size - m - i))
    res = det_poly(rows).with_vars(vars)
    disc = res.divexact(f[lead_idx])
    if (m * (m - 1) // 2) % 2:
        disc = -disc
    return disc.with_vars(vars)


def proportionality(p: MultiPoly, q: MultiPoly) -> Fraction | None:
    """c with p == c * q exactly, or None."""
    vars = tuple(p.vars) if p.vars else tuple(q.vars)
    tp, tq = p.with_vars(vars).terms(), q.with_vars(vars).terms()
    if set(tp) != set(tq) or not tp:
        return None
    ratio = None
    for e, c in tp.items():
        r = as_fraction(c) / as_fraction(tq[e])
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio
