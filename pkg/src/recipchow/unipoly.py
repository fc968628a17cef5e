"""Univariate polynomials over Q, Sturm sequences and resultants."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, PreconditionError
from .linalg import RatMatrix, det_exact
from .rational import as_fraction


class UniPoly:
    """Coefficients lowest degree first; trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = as_fraction(other)
            return UniPoly([c * x for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        q = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(q), UniPoly(rem[:len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lead())

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def sign_at_infinity(self, positive: bool = True) -> int:
        if self.is_zero():
            return 0
        s = 1 if self.lead() > 0 else -1
        if not positive and self.degree % 2:
            s = -s
        return s


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise PreconditionError("squarefree part of the zero polynomial")
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def squarefree_decomposition(p: UniPoly) -> list[UniPoly]:
    """Yun's algorithm: factors f_1, f_2, ... with p = c * prod f_i^i."""
    if p.is_zero():
        raise PreconditionError("squarefree decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    while b.degree > 0:
        a = poly_gcd(b, d)
        out.append(a)
        b = b // a
        c = d // a
        d = c - b.derivative()
    while out and out[-1].degree == 0:
        out.pop()
    return out


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign_changes(signs) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def sturm_real_roots(p: UniPoly) -> int:
    """Number of distinct real roots, counted on the squarefree part."""
    if p.is_zero():
        raise PreconditionError("root count of the zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return 0
    seq = sturm_sequence(q)
    lo = _sign_changes(s.sign_at_infinity(False) for s in seq)
    hi = _sign_changes(s.sign_at_infinity(True) for s in seq)
    return lo - hi


def real_roots_with_multiplicity(p: UniPoly) -> int:
    if p.is_zero():
        raise PreconditionError("root count of the zero polynomial")
    return sum(i * sturm_real_roots(f) for i, f in enumerate(squarefree_decomposition(p), start=1))


def sylvester_matrix(f: Sequence, g: Sequence) -> RatMatrix:
    """Sylvester matrix of two binary forms given by coefficient lists.

    ``f = [f_0, ..., f_m]`` means ``sum f_k s^(m-k) t^k`` (highest power of s
    first).  Leading zeros are kept, so forms with a root at [1:0] are fine.
    """
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise DimensionError("empty form")
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    return RatMatrix.from_rows(rows)


def sylvester_resultant(f: Sequence, g: Sequence, degree: int | None = None) -> Fraction:
    """Resultant of two binary forms of the same degree (coefficient lists, s-major)."""
    if degree is not None and (len(f) != degree + 1 or len(g) != degree + 1):
        raise DimensionError(f"both forms must have degree {degree}")
    if degree is not None and len(f) != len(g):
        raise DimensionError("degree mismatch")
    if len(f) == 1 and len(g) == 1:
        return Fraction(1)
    return det_exact(sylvester_matrix(f, g))
