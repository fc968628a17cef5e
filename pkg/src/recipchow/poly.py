"""Sparse multivariate polynomials with exact coefficients.

Exponent vectors are packed into a single Python int, ``BITS`` bits per
variable, so multiplying monomials is integer addition.  Coefficients are
``int`` or ``Fraction``; integral fractions are stored as ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, PreconditionError
from .rational import GaussianRational, as_fraction, format_rational, parse_rational

BITS = 16
_MASK = (1 << BITS) - 1
_LIMIT = 1 << BITS


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e >= _LIMIT:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (BITS * i)
    return key


def _unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (BITS * i)) & _MASK for i in range(nvars))


def _max_exp(key: int) -> int:
    m = 0
    while key:
        e = key & _MASK
        if e > m:
            m = e
        key >>= BITS
    return m


def _mul_dicts(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = get(e)
            if v is None:
                out[e] = ca * cb
            else:
                s = v + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def _add_into(out: dict, b: dict, scale=1) -> None:
    get = out.get
    for e, c in b.items():
        v = get(e)
        if v is None:
            out[e] = c * scale if scale != 1 else c
        else:
            s = v + (c * scale if scale != 1 else c)
            if s:
                out[e] = s
            else:
                del out[e]


class MultiPoly:
    """Immutable sparse polynomial over an ordered variable table."""

    __slots__ = ("vars", "_terms", "_maxexp")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        t = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(vars):
                raise DimensionError("exponent vector length differs from the variable table")
            c = _norm(as_fraction(c))
            if c:
                key = _pack(exps)
                s = t.get(key, 0) + c
                if s:
                    t[key] = _norm(s)
                else:
                    t.pop(key, None)
        self.vars = vars
        self._terms = t
        self._maxexp = None

    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.vars = vars
        p._terms = {k: _norm(c) for k, c in terms.items() if c}
        p._maxexp = None
        return p

    # --- constructors -------------------------------------------------------

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            raise PreconditionError(f"unknown variable {name!r}")
        i = vars.index(name)
        return cls._raw(vars, {1 << (BITS * i): 1})

    @classmethod
    def constant(cls, c, vars: Sequence[str] = ()) -> "MultiPoly":
        return cls._raw(tuple(vars), {0: as_fraction(c)})

    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "MultiPoly":
        return cls._raw(tuple(vars), {})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff=1, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = tuple(vars) if vars is not None else tuple(powers)
        exps = [0] * len(vars)
        for v, e in powers.items():
            if v not in vars:
                raise PreconditionError(f"unknown variable {v!r}")
            exps[vars.index(v)] += e
        return cls._raw(vars, {_pack(exps): as_fraction(coeff)})

    @classmethod
    def coerce(cls, x, vars: Sequence[str] = ()) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return cls.constant(x, vars)

    # --- basic access -------------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def terms(self) -> dict[tuple[int, ...], object]:
        n = len(self.vars)
        return {_unpack(k, n): c for k, c in self._terms.items()}

    def items(self):
        """(exponent tuple, coefficient) pairs, leading term first (graded lex)."""
        n = len(self.vars)
        decoded = [(_unpack(k, n), c) for k, c in self._terms.items()]
        decoded.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return decoded

    def coefficients(self) -> list:
        return [c for _, c in self.items()]

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.items()[0]

    def max_exponent(self) -> int:
        if self._maxexp is None:
            m = 0
            for k in self._terms:
                e = _max_exp(k)
                if e > m:
                    m = e
            self._maxexp = m
        return self._maxexp

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        n = len(self.vars)
        return max(sum(_unpack(k, n)) for k in self._terms)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        return max((((k >> (BITS * i)) & _MASK) for k in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        n = len(self.vars)
        degs = {sum(_unpack(k, n)) for k in self._terms}
        return len(degs) <= 1

    def bidegree(self, group1: Iterable[str], group2: Iterable[str]) -> tuple[int, int]:
        """Degrees in two disjoint variable groups; requires bihomogeneity."""
        g1, g2 = set(group1), set(group2)
        if g1 & g2:
            raise ValueError("variable groups overlap")
        for v in self.used_vars():
            if v not in g1 and v not in g2:
                raise PreconditionError(f"variable {v!r} is in neither group")
        idx1 = [i for i, v in enumerate(self.vars) if v in g1]
        idx2 = [i for i, v in enumerate(self.vars) if v in g2]
        n = len(self.vars)
        pairs = set()
        for k in self._terms:
            e = _unpack(k, n)
            pairs.add((sum(e[i] for i in idx1), sum(e[i] for i in idx2)))
        if len(pairs) > 1:
            raise PreconditionError(f"not bihomogeneous: degree pairs {sorted(pairs)}")
        return pairs.pop() if pairs else (-1, -1)

    def used_vars(self) -> tuple[str, ...]:
        n = len(self.vars)
        used = [False] * n
        for k in self._terms:
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise PreconditionError(f"unknown variable {var!r}") from None

    # --- variable tables ----------------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over another table that contains every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        n = len(self.vars)
        mapping = []
        for i, v in enumerate(self.vars):
            mapping.append(pos.get(v))
        out = {}
        for k, c in self._terms.items():
            key = 0
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    j = mapping[i]
                    if j is None:
                        raise PreconditionError(f"variable {self.vars[i]!r} missing from target table")
                    key |= e << (BITS * j)
            out[key] = c
        return MultiPoly._raw(vars, out)

    def compact(self) -> "MultiPoly":
        return self.with_vars(self.used_vars())

    def _aligned(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self.vars, self._terms, other._terms
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return merged, self.with_vars(merged)._terms, other.with_vars(merged)._terms

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(other, self.vars)
            except TypeError:
                return NotImplemented
        vars, a, b = self._aligned(other)
        out = dict(a)
        _add_into(out, b)
        return MultiPoly._raw(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(other, self.vars)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                c = as_fraction(other)
            except TypeError:
                return NotImplemented
            c = _norm(c)
            if not c:
                return MultiPoly.zero(self.vars)
            return MultiPoly._raw(self.vars, {k: v * c for k, v in self._terms.items()})
        if self.max_exponent() + other.max_exponent() >= _LIMIT:
            raise OverflowError("exponent exceeds packed range")
        vars, a, b = self._aligned(other)
        return MultiPoly._raw(vars, _mul_dicts(a, b))

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_fraction(c)
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        if self.max_exponent() * k >= _LIMIT:
            raise OverflowError("exponent exceeds packed range")
        out = MultiPoly.constant(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(other, self.vars)
            except TypeError:
                return NotImplemented
        if self.vars == other.vars:
            return self._terms == other._terms
        a, b = self.compact(), other.compact()
        if set(a.vars) != set(b.vars):
            return False
        return a._terms == b.with_vars(a.vars)._terms

    def __hash__(self):
        c = self.compact()
        order = sorted(range(len(c.vars)), key=lambda i: c.vars[i])
        return hash(frozenset(
            (tuple((c.vars[i], e[i]) for i in order if e[i]), v) for e, v in c.terms().items()))

    # --- substitution and evaluation -----------------------------------------

    def substitute(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Replace variables by polynomials or scalars (simultaneously)."""
        for v in mapping:
            self._index(v)
        n = len(self.vars)
        result_vars = tuple(v for v in self.vars if v not in mapping)
        for s in mapping.values():
            if isinstance(s, MultiPoly):
                result_vars += tuple(v for v in s.vars if v not in result_vars)
        subs = []
        for v in self.vars:
            if v in mapping:
                s = mapping[v]
                s = s.with_vars(result_vars) if isinstance(s, MultiPoly) else MultiPoly.constant(s, result_vars)
            else:
                s = MultiPoly.var(v, result_vars)
            subs.append(s)
        power_cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = subs[i] ** e
            return power_cache[key]

        out: dict = {}
        for k, c in self._terms.items():
            term = {0: c}
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    term = _mul_dicts(term, power(i, e)._terms)
            _add_into(out, term)
        return MultiPoly._raw(result_vars, out)

    def evaluate(self, point):
        """Evaluate at a full point (mapping name->value or sequence in table order).

        Values may be rationals or Gaussian rationals.
        """
        if isinstance(point, Mapping):
            missing = [v for v in self.used_vars() if v not in point]
            if missing:
                raise PreconditionError(f"no value for variables {missing}")
            unknown = [v for v in point if v not in self.vars]
            if unknown:
                raise PreconditionError(f"unknown variables {unknown}")
            vals = [point.get(v, 0) for v in self.vars]
        else:
            vals = list(point)
            if len(vals) != len(self.vars):
                raise DimensionError("point has the wrong length")
        vals = [v if isinstance(v, GaussianRational) else as_fraction(v) for v in vals]
        n = len(self.vars)
        total = Fraction(0)
        pcache: dict = {}
        for k, c in self._terms.items():
            t = c
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    key = (i, e)
                    if key not in pcache:
                        pcache[key] = vals[i] ** e
                    t = t * pcache[key]
            total = total + t
        return _norm(total) if isinstance(total, Fraction) else total

    def divide_by_monomial(self, powers: Mapping[str, int]) -> "MultiPoly":
        exps = [0] * len(self.vars)
        for v, e in powers.items():
            exps[self._index(v)] = e
        n = len(self.vars)
        key = _pack(exps)
        out = {}
        for k, c in self._terms.items():
            e = _unpack(k, n)
            if any(a < b for a, b in zip(e, exps)):
                raise PreconditionError("polynomial is not divisible by the monomial")
            out[k - key] = c
        return MultiPoly._raw(self.vars, out)

    def monomial_gcd(self) -> dict[str, int]:
        """Largest monomial dividing every term."""
        n = len(self.vars)
        if not self._terms:
            return {}
        mins = None
        for k in self._terms:
            e = _unpack(k, n)
            mins = list(e) if mins is None else [min(a, b) for a, b in zip(mins, e)]
        return {v: m for v, m in zip(self.vars, mins) if m}

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        """Exact polynomial division; raises if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        vars, a, b = self._aligned(other)
        n = len(vars)
        rem = MultiPoly._raw(vars, dict(a))
        div = MultiPoly._raw(vars, dict(b))
        lt_e, lt_c = div.leading_term()
        q = MultiPoly.zero(vars)
        while not rem.is_zero():
            e, c = rem.leading_term()
            if any(x < y for x, y in zip(e, lt_e)):
                raise PreconditionError("division is not exact")
            mono = MultiPoly._raw(vars, {_pack([x - y for x, y in zip(e, lt_e)]): Fraction(c) / lt_c})
            q = q + mono
            rem = rem - mono * div
        return q

    def diff(self, var: str) -> "MultiPoly":
        i = self._index(var)
        unit = 1 << (BITS * i)
        out = {}
        for k, c in self._terms.items():
            e = (k >> (BITS * i)) & _MASK
            if e:
                out[k - unit] = c * e
        return MultiPoly._raw(self.vars, out)

    # --- normalization ------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        den = 1
        for c in self._terms.values():
            den = lcm(den, as_fraction(c).denominator)
        g = 0
        for c in self._terms.values():
            g = gcd(g, int(as_fraction(c) * den))
        return Fraction(g, den)

    def normalized(self) -> "MultiPoly":
        """Content 1 and positive leading coefficient (graded lex)."""
        if not self._terms:
            return self
        p = self / self.content()
        if as_fraction(p.leading_term()[1]) < 0:
            p = -p
        return p

    # --- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"coeff": format_rational(c), "exps": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MultiPoly":
        vars = tuple(obj["vars"])
        terms = {}
        for t in obj["terms"]:
            exps = tuple(int(x) for x in t["exps"])
            if exps in terms:
                raise ValueError("duplicate exponent vector")
            terms[exps] = parse_rational(str(t["coeff"]))
        return cls(vars, terms)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            cf = as_fraction(c)
            if not mono:
                s = format_rational(abs(cf))
            elif abs(cf) == 1:
                s = mono
            else:
                s = f"{format_rational(abs(cf))}*{mono}"
            parts.append(("-" if cf < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out


def unify(polys: Sequence[MultiPoly]) -> tuple[str, ...]:
    vars: tuple = ()
    for p in polys:
        vars += tuple(v for v in p.vars if v not in vars)
    return vars


def det_poly(matrix: Sequence[Sequence]) -> MultiPoly:
    """Determinant of a square matrix with polynomial (or scalar) entries.

    Laplace expansion along rows with memoized column-subset minors, so the
    cost is O(2^n) minors rather than n! permutations.
    """
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise DimensionError("det_poly needs a square matrix")
    if n == 0:
        return MultiPoly.constant(1)
    polys = [x for r in matrix for x in r if isinstance(x, MultiPoly)]
    vars = unify(polys)
    a = [[MultiPoly.coerce(x, vars).with_vars(vars)._terms for x in r] for r in matrix]
    # minors[mask] = det of rows (n - popcount(mask)) .. n-1 and columns in mask
    minors: dict[int, dict] = {}
    last = n - 1
    for j in range(n):
        if a[last][j]:
            minors[1 << j] = a[last][j]
    for size in range(2, n + 1):
        r = n - size
        nxt: dict[int, dict] = {}
        row = a[r]
        for mask in _masks(n, size):
            out: dict = {}
            pos = 0
            for j in range(n):
                if not (mask >> j) & 1:
                    continue
                entry = row[j]
                sub = minors.get(mask & ~(1 << j))
                if entry and sub:
                    term = _mul_dicts(entry, sub)
                    _add_into(out, term, -1 if pos & 1 else 1)
                pos += 1
            if out:
                nxt[mask] = out
        minors = nxt
    return MultiPoly._raw(vars, minors.get((1 << n) - 1, {}))


def _masks(n: int, size: int):
    from itertools import combinations
    for combo in combinations(range(n), size):
        m = 0
        for j in combo:
            m |= 1 << j
        yield m
