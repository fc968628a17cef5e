"""The space H_B, the vectors v_I and the symmetric matrix representing the
Chow form of a reciprocal linear space.

For a linear space L with Pluecker vector alpha and bases B, H_B is the set
of d-vectors supported on B that lie in the image of (wedge with the
all-ones vector).  Its dimension is the number k of BCC facets, and writing
the coordinate functionals of H_B in terms of the facet coordinates gives the
vectors v_I in Q^k.  The matrix

    phi(gamma) = sum_I (gamma_I / alpha_I) v_I v_I^T

is singular exactly when gamma = p(M^perp) for a space M meeting L^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import prod
from typing import Mapping, Sequence

from .errors import InternalInconsistencyError, PreconditionError
from .exterior import (PlueckerVector, Subset, complement, dual_sign, index_name,
                       pluecker_from_matrix, sort_sign, subsets, top_pairing,
                       wedge_vector)
from .linalg import RatMatrix, as_matrix, inverse, nullspace, rank
from .matroid import Matroid, circuits_and_broken
from .poly import MultiPoly, det_poly
from .rational import as_fraction

GAMMA = "gamma"
BETA = "beta"


def gamma_name(I: Sequence[int], n: int) -> str:
    return "g_" + index_name(I, n)


def beta_name(I: Sequence[int], n: int) -> str:
    return "b_" + index_name(I, n)


def alpha_name(I: Sequence[int], n: int) -> str:
    return "a_" + index_name(I, n)


def _ratio_name(I, n):
    return "u_" + index_name(I, n)


@dataclass(frozen=True)
class LinearSpace:
    """Row space of a full-rank d x n rational matrix, not inside a coordinate hyperplane."""

    mat: RatMatrix

    def __post_init__(self):
        m = as_matrix(self.mat)
        object.__setattr__(self, "mat", m)
        d, n = m.shape
        if d < 1 or d > n:
            raise PreconditionError(f"need 1 <= d <= n, got d={d}, n={n}")
        if rank(m) != d:
            raise PreconditionError("matrix does not have full row rank")
        zero_cols = [j + 1 for j in range(n) if all(x == 0 for x in m.col(j))]
        if zero_cols:
            raise PreconditionError(f"space lies in the coordinate hyperplane(s) x_i = 0 for i in {zero_cols}")

    @classmethod
    def from_rows(cls, rows) -> "LinearSpace":
        return cls(RatMatrix.from_rows(rows))

    @property
    def d(self) -> int:
        return self.mat.rows

    @property
    def n(self) -> int:
        return self.mat.cols

    @cached_property
    def plucker(self) -> PlueckerVector:
        return pluecker_from_matrix(self.mat)

    @cached_property
    def matroid(self) -> Matroid:
        return Matroid.from_support(self.plucker)

    def contains(self, x: Sequence) -> bool:
        aug = RatMatrix.from_rows([list(r) for r in self.mat.tolist()] + [list(x)])
        return rank(aug) == self.d


def _wedge_one_constraints(bases: Sequence[Subset], n: int, d: int) -> RatMatrix:
    """Rows: coefficients of e_C in alpha ^ 1 for each (d+1)-subset C."""
    col = {B: j for j, B in enumerate(bases)}
    rows = []
    for C in combinations(range(1, n + 1), d + 1):
        row = [0] * len(bases)
        hit = False
        for pos, i in enumerate(C):
            I = C[:pos] + C[pos + 1:]
            j = col.get(I)
            if j is not None:
                row[j] = -1 if (len(C) - 1 - pos) % 2 else 1
                hit = True
        if hit:
            rows.append(row)
    if not rows:
        return RatMatrix(0, len(bases), ())
    return RatMatrix.from_rows(rows)


@dataclass(frozen=True)
class HBasis:
    bases: tuple          # column labels
    facets: tuple
    matrix: RatMatrix     # k x |B|, facet columns form the identity

    @property
    def k(self) -> int:
        return self.matrix.rows


def hb_basis(m: Matroid) -> HBasis:
    """Basis of H_B reduced so that the facet columns are the identity."""
    bases = tuple(m.sorted_bases())
    facets = circuits_and_broken(m).facets
    cons = _wedge_one_constraints(bases, m.n, m.d)
    if cons.rows == 0:
        N = RatMatrix.identity(len(bases))
    else:
        N = nullspace(cons)
    if N.rows != len(facets):
        raise InternalInconsistencyError(
            f"dim H_B = {N.rows} but the BCC has {len(facets)} facets")
    fcols = [bases.index(F) for F in facets]
    NF = N.select_columns(fcols)
    try:
        H = inverse(NF) @ N
    except ZeroDivisionError:
        raise InternalInconsistencyError("facet coordinates are not independent on H_B") from None
    return HBasis(bases, facets, H)


@dataclass(frozen=True)
class VectorTable:
    k: int
    facets: tuple
    vectors: dict = field(hash=False)   # basis -> tuple of k Fractions

    def __getitem__(self, I) -> tuple:
        return self.vectors[tuple(I)]

    def bases(self) -> list[Subset]:
        return sorted(self.vectors)

    def matrix(self, order: Sequence[Subset] | None = None) -> RatMatrix:
        """k x |B| matrix with columns v_I."""
        order = list(order) if order is not None else self.bases()
        return RatMatrix.from_rows([[self.vectors[I][r] for I in order] for r in range(self.k)])

    def gram(self, weights: Mapping[Subset, object]) -> RatMatrix:
        """sum_I weights[I] v_I v_I^T."""
        out = [[Fraction(0)] * self.k for _ in range(self.k)]
        for I, w in weights.items():
            w = as_fraction(w)
            if not w:
                continue
            v = self.vectors[tuple(I)]
            for a in range(self.k):
                if v[a]:
                    for b in range(self.k):
                        if v[b]:
                            out[a][b] += w * v[a] * v[b]
        return RatMatrix.from_rows(out)

    def agrees_up_to_column_sign(self, other: "VectorTable") -> bool:
        if self.k != other.k or set(self.vectors) != set(other.vectors):
            return False
        for I, v in self.vectors.items():
            w = other.vectors[I]
            if v != w and v != tuple(-x for x in w):
                return False
        return True


def v_vectors(m: Matroid) -> VectorTable:
    """v_I = column I of the facet-reduced H_B basis."""
    hb = hb_basis(m)
    vecs = {B: hb.matrix.col(j) for j, B in enumerate(hb.bases)}
    return VectorTable(hb.k, hb.facets, vecs)


def v_vectors_by_relations(m: Matroid) -> VectorTable:
    """The same table obtained by solving one circuit relation per non-facet basis.

    Bases are processed by decreasing element sum, which refines the reverse of
    the basis order, so every basis on the right-hand side is already known.
    """
    data = circuits_and_broken(m)
    facets = data.facets
    k = len(facets)
    n = m.n
    vecs: dict = {}
    for a, F in enumerate(facets):
        vecs[F] = tuple(Fraction(int(a == b)) for b in range(k))
    pending = sorted((B for B in m.bases if B not in vecs), key=lambda B: (-sum(B), B))
    by_max = sorted(data.circuits)
    for B in pending:
        sB = set(B)
        C_prime = next((C for C in by_max if set(C[:-1]) <= sB), None)
        if C_prime is None:
            raise InternalInconsistencyError(f"non-facet basis {B} contains no broken circuit")
        C = tuple(sorted(sB | {C_prime[-1]}))
        rest = complement(C, n)
        acc = [Fraction(0)] * k
        own = None
        for i in C:
            I = tuple(x for x in C if x != i)
            if I not in m.bases:
                continue
            s, _ = sort_sign(rest + (i,))
            coef = s * dual_sign(I)
            if I == B:
                own = coef
                continue
            if I not in vecs:
                raise InternalInconsistencyError(f"basis {I} used before it was solved")
            for r in range(k):
                acc[r] += coef * vecs[I][r]
        if own is None:
            raise InternalInconsistencyError("relation does not involve its basis")
        vecs[B] = tuple(-x / own for x in acc)
    return VectorTable(k, facets, vecs)


@dataclass(frozen=True)
class SymLinMatrix:
    """k x k symmetric matrix sum_I (var_I * scale_I) v_I v_I^T.

    ``coeffs[(a, b)]`` maps a basis I to the scalar weight of gamma_I in entry
    (a, b), for a <= b.  Variables are named by ``convention``.
    """

    n: int
    d: int
    k: int
    coeffs: dict = field(hash=False)
    convention: str = GAMMA

    def _var(self, I):
        if self.convention == BETA:
            return beta_name(complement(I, self.n), self.n), dual_sign(I)
        return gamma_name(I, self.n), 1

    def variables(self) -> list[str]:
        used = sorted({I for c in self.coeffs.values() for I in c})
        return [self._var(I)[0] for I in used]

    def entry(self, a: int, b: int) -> MultiPoly:
        if a > b:
            a, b = b, a
        vars = self.variables()
        out = MultiPoly.zero(vars)
        for I, c in sorted(self.coeffs.get((a, b), {}).items()):
            name, sign = self._var(I)
            out = out + MultiPoly.var(name, vars) * (sign * c)
        return out

    def polys(self) -> list[list[MultiPoly]]:
        return [[self.entry(a, b) for b in range(self.k)] for a in range(self.k)]

    def evaluate(self, gamma: Mapping[Subset, object]) -> RatMatrix:
        """Numeric matrix at given gamma_I values (always gamma, whatever the convention)."""
        rows = [[Fraction(0)] * self.k for _ in range(self.k)]
        for (a, b), c in self.coeffs.items():
            val = sum((w * as_fraction(gamma.get(I, 0)) for I, w in c.items()), Fraction(0))
            rows[a][b] = val
            rows[b][a] = val
        return RatMatrix.from_rows(rows)

    def to_json(self) -> dict:
        return {"k": self.k, "convention": self.convention,
                "entries": [[e.to_json() for e in row] for row in self.polys()]}


def _sym_coeffs(table: VectorTable, weight: Mapping[Subset, Fraction]) -> dict:
    coeffs: dict = {}
    for I, v in table.vectors.items():
        w = weight[I]
        for a in range(table.k):
            if not v[a]:
                continue
            for b in range(a, table.k):
                if v[b]:
                    slot = coeffs.setdefault((a, b), {})
                    slot[I] = slot.get(I, Fraction(0)) + w * v[a] * v[b]
    return {ab: {I: c for I, c in cs.items() if c} for ab, cs in coeffs.items()}


def phi_symbolic(L: LinearSpace, convention: str = GAMMA,
                 table: VectorTable | None = None) -> SymLinMatrix:
    if convention not in (GAMMA, BETA):
        raise PreconditionError(f"unknown variable convention {convention!r}")
    table = table or v_vectors(L.matroid)
    alpha = L.plucker
    weight = {I: 1 / alpha[I] for I in table.vectors}
    return SymLinMatrix(L.n, L.d, table.k, _sym_coeffs(table, weight), convention)


def phi_terms(m: Matroid, convention: str = BETA,
              table: VectorTable | None = None) -> list[list[dict[str, Fraction]]]:
    """Entries of phi with alpha kept symbolic.

    Entry (a, b) maps ``"b_45/a_123"`` (or ``"g_123/a_123"``) to its
    coefficient; zero coefficients are dropped.
    """
    if convention not in (GAMMA, BETA):
        raise PreconditionError(f"unknown variable convention {convention!r}")
    table = table or v_vectors(m)
    n = m.n
    coeffs = _sym_coeffs(table, {I: Fraction(1) for I in table.vectors})
    out = [[{} for _ in range(table.k)] for _ in range(table.k)]
    for (a, b), cs in coeffs.items():
        entry = {}
        for I, c in sorted(cs.items()):
            if convention == BETA:
                key, c = f"{beta_name(complement(I, n), n)}/{alpha_name(I, n)}", c * dual_sign(I)
            else:
                key = f"{gamma_name(I, n)}/{alpha_name(I, n)}"
            entry[key] = c
        out[a][b] = out[b][a] = entry
    return out


def ratio_determinant(table: VectorTable, n: int) -> MultiPoly:
    """det(sum_I u_I v_I v_I^T) in variables u_I; multiaffine by Cauchy-Binet."""
    order = table.bases()
    vars = [_ratio_name(I, n) for I in order]
    coeffs = _sym_coeffs(table, {I: Fraction(1) for I in order})
    mat = []
    for a in range(table.k):
        row = []
        for b in range(table.k):
            cs = coeffs.get((min(a, b), max(a, b)), {})
            e = MultiPoly.zero(vars)
            for I, c in cs.items():
                e = e + MultiPoly.var(_ratio_name(I, n), vars) * c
            row.append(e)
        mat.append(row)
    det = det_poly(mat)
    if det.max_exponent() > 1:
        raise InternalInconsistencyError("determinant is not multiaffine in the ratio variables")
    return det.with_vars(vars)


def _map_ratio_monomials(det: MultiPoly, order: Sequence[Subset], n: int,
                         top, bottom, out_vars: Sequence[str]) -> MultiPoly:
    """Replace prod_{I in S} u_I by coeff * top(S) * bottom(complement of S).

    ``top(I)`` and ``bottom(I)`` return (scalar, var-name-or-None).
    """
    terms: dict = {}
    index = {v: i for i, v in enumerate(out_vars)}
    for exps, c in det.terms().items():
        e = [0] * len(out_vars)
        coeff = as_fraction(c)
        for I, x in zip(order, exps):
            scal, name = top(I) if x else bottom(I)
            coeff *= scal
            if name is not None:
                e[index[name]] += 1
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(out_vars, terms)


def _finish(p: MultiPoly, normalize: bool) -> MultiPoly:
    return p.normalized() if normalize else p


def chow_form(L: LinearSpace, convention: str = GAMMA, cleared: bool = False,
              normalize: bool = False, table: VectorTable | None = None) -> MultiPoly:
    """det(phi) as a form of degree k in gamma (or beta) variables.

    With ``cleared`` the result is multiplied by prod alpha_I; with
    ``normalize`` it is scaled to content 1 and positive leading coefficient.
    """
    if convention not in (GAMMA, BETA):
        raise PreconditionError(f"unknown variable convention {convention!r}")
    table = table or v_vectors(L.matroid)
    n = L.n
    order = table.bases()
    alpha = L.plucker
    det = ratio_determinant(table, n)
    scale = prod((alpha[I] for I in order), start=Fraction(1)) if cleared else Fraction(1)

    if convention == GAMMA:
        out_vars = [gamma_name(I, n) for I in order]

        def top(I):
            return 1 / alpha[I], gamma_name(I, n)
    else:
        out_vars = [beta_name(complement(I, n), n) for I in reversed(order)]

        def top(I):
            return dual_sign(I) / alpha[I], beta_name(complement(I, n), n)

    p = _map_ratio_monomials(det, order, n, top, lambda I: (1, None), out_vars)
    return _finish(p * scale, normalize)


def chow_form_symbolic(m: Matroid, table: VectorTable | None = None,
                       normalize: bool = False) -> MultiPoly:
    """prod alpha_I * det(phi) with both alpha and gamma symbolic.

    Variables ``a_I`` and ``g_I``; every monomial is prod_{S} g_I prod_{not S} a_I.
    """
    table = table or v_vectors(m)
    n = m.n
    order = table.bases()
    det = ratio_determinant(table, n)
    out_vars = [alpha_name(I, n) for I in order] + [gamma_name(I, n) for I in order]
    p = _map_ratio_monomials(det, order, n,
                             lambda I: (1, gamma_name(I, n)),
                             lambda I: (1, alpha_name(I, n)), out_vars)
    return _finish(p, normalize)


def kernel_witness_check(L: LinearSpace, w: Sequence, delta: Mapping[Subset, object],
                         table: VectorTable | None = None) -> bool:
    """Check that diag_w(alpha) spans a kernel vector of phi(delta ^ w).

    Requires w without zero coordinates and w^{-1} in L.  ``delta`` is an
    (n-d-1)-vector given by its coordinates.
    """
    n, d = L.n, L.d
    w = [as_fraction(x) for x in w]
    if len(w) != n:
        raise PreconditionError(f"w must have {n} coordinates")
    if any(x == 0 for x in w):
        raise PreconditionError("w has a zero coordinate")
    if not L.contains([1 / x for x in w]):
        raise PreconditionError("w^{-1} is not in L")
    if d == n:
        return True
    table = table or v_vectors(L.matroid)
    alpha = L.plucker
    scaled = {I: alpha[I] * prod((w[i - 1] for i in I), start=Fraction(1)) for I in table.vectors}
    # scaled alpha must lie in H_B: its coordinates agree with sum_F scaled_F v_I,F
    x = [scaled[F] for F in table.facets]
    for I, v in table.vectors.items():
        if sum((a * b for a, b in zip(v, x)), Fraction(0)) != scaled[I]:
            return False
    beta = wedge_vector(delta, w, n)
    gamma = {I: top_pairing(I, beta, n) for I in table.vectors}
    phi = phi_symbolic(L, table=table)
    mat = phi.evaluate(gamma)
    col = RatMatrix(len(x), 1, x)
    return all(e == 0 for e in (mat @ col).entries)
