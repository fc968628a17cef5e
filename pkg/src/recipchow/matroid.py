"""Matroids given by their bases, broken circuits and the BCC facets.

Ground set is [n] ordered 1 < 2 < ... < n.  Everything is brute force over
subsets, which is fine for n <= 10.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InternalInconsistencyError, NotPlueckerError, PreconditionError
from .exterior import PlueckerVector, Subset

EXCHANGE_CHECK_MAX_N = 8


@dataclass(frozen=True)
class Matroid:
    n: int
    d: int
    bases: frozenset
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        bases = frozenset(tuple(sorted(B)) for B in self.bases)
        object.__setattr__(self, "bases", bases)
        if not bases:
            raise PreconditionError("a matroid needs at least one basis")
        if any(len(B) != self.d for B in bases):
            raise PreconditionError("bases have inconsistent size")
        if self.validate and self.n <= EXCHANGE_CHECK_MAX_N and not self._exchange_holds():
            raise NotPlueckerError("basis exchange fails: not a Pluecker vector")

    @classmethod
    def from_support(cls, p: PlueckerVector) -> "Matroid":
        if p.is_zero():
            raise PreconditionError("zero vector has no matroid")
        return cls(p.n, p.d, frozenset(p.support()))

    @classmethod
    def uniform(cls, d: int, n: int) -> "Matroid":
        return cls(n, d, frozenset(combinations(range(1, n + 1), d)), validate=False)

    def _exchange_holds(self) -> bool:
        for B1 in self.bases:
            for B2 in self.bases:
                s2 = set(B2)
                for x in B1:
                    if x in s2:
                        continue
                    base = set(B1) - {x}
                    if not any(tuple(sorted(base | {y})) in self.bases for y in s2 - set(B1)):
                        return False
        return True

    def relabel(self, perm: Sequence[int]) -> "Matroid":
        """Matroid with element i renamed perm[i-1] (perm is a permutation of [n])."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise PreconditionError("not a permutation of the ground set")
        return Matroid(self.n, self.d, frozenset(tuple(sorted(perm[i - 1] for i in B)) for B in self.bases))

    def sorted_bases(self) -> list[Subset]:
        return sorted(self.bases)

    def is_independent(self, S: Iterable[int]) -> bool:
        s = set(S)
        if len(s) > self.d:
            return False
        return any(s <= set(B) for B in self.bases)

    def rank_of(self, S: Iterable[int]) -> int:
        s = set(S)
        return max(len(s & set(B)) for B in self.bases)

    def loops(self) -> tuple[int, ...]:
        covered = set().union(*map(set, self.bases))
        return tuple(i for i in range(1, self.n + 1) if i not in covered)

    def is_loopless(self) -> bool:
        return not self.loops()

    def _require_loopless(self):
        loops = self.loops()
        if loops:
            raise PreconditionError(f"matroid has loop(s) {loops}")

    @cached_property
    def circuits(self) -> frozenset:
        """Minimal dependent sets, by increasing size."""
        found: list[frozenset] = []
        for size in range(1, self.d + 2):
            for S in combinations(range(1, self.n + 1), size):
                if self.is_independent(S):
                    continue
                fs = frozenset(S)
                if any(c <= fs for c in found):
                    continue
                found.append(fs)
        return frozenset(tuple(sorted(c)) for c in found)

    def unique_circuit(self, S: Iterable[int]) -> Subset:
        s = set(S)
        inside = [C for C in self.circuits if set(C) <= s]
        if len(inside) != 1:
            raise InternalInconsistencyError(f"expected one circuit inside {sorted(s)}, found {inside}")
        return inside[0]


@dataclass(frozen=True)
class BccData:
    circuits: frozenset
    broken_circuits: frozenset
    facets: tuple

    @property
    def degree(self) -> int:
        return len(self.facets)


def circuits_and_broken(m: Matroid) -> BccData:
    m._require_loopless()
    circuits = m.circuits
    broken = frozenset(tuple(C[:-1]) for C in circuits)
    facets = tuple(B for B in m.sorted_bases()
                   if not any(set(bc) <= set(B) for bc in broken))
    return BccData(circuits, broken, facets)


def bcc_facets_degree(m: Matroid) -> tuple[tuple, int]:
    data = circuits_and_broken(m)
    return data.facets, data.degree


@dataclass(frozen=True)
class BasisOrder:
    covers: tuple      # pairs (B, B') with B < B'
    maximal: tuple


def basis_order_check(m: Matroid) -> BasisOrder:
    """Covering relations B < B' and the maximal elements.

    B < B' when |B u B'| = d+1 and B' minus B is the maximum of the unique
    circuit in B u B'.  Raises if the relation has a cycle or if its maximal
    elements differ from the BCC facets.
    """
    m._require_loopless()
    bases = m.sorted_bases()
    covers = []
    for B in bases:
        sB = set(B)
        for B2 in bases:
            if B2 == B:
                continue
            union = sB | set(B2)
            if len(union) != m.d + 1:
                continue
            (new,) = set(B2) - sB
            C = m.unique_circuit(union)
            if max(C) == new:
                covers.append((B, B2))
    succ: dict = {B: [] for B in bases}
    for a, b in covers:
        succ[a].append(b)
    _assert_acyclic(succ)
    maximal = tuple(B for B in bases if not succ[B])
    facets, _ = bcc_facets_degree(m)
    if set(maximal) != set(facets):
        raise InternalInconsistencyError(
            f"maximal elements {maximal} differ from BCC facets {facets}")
    return BasisOrder(tuple(covers), maximal)


def _assert_acyclic(succ: dict) -> None:
    state: dict = {}
    for start in succ:
        if start in state:
            continue
        stack = [(start, iter(succ[start]))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
                continue
            s = state.get(nxt)
            if s == 1:
                raise InternalInconsistencyError("cycle in the basis partial order")
            if s is None:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
