"""Rank oracles for the matroids the solvers compose.

Every oracle exposes ``ground`` (a tuple in a fixed order) and ``rank``.
Independence, span and basis tests are derived from the rank.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InputError
from .hypercore import MixedHypergraph


class Matroid:
    ground: tuple

    @cached_property
    def ground_set(self) -> frozenset:
        return frozenset(self.ground)

    def _check(self, X) -> frozenset:
        X = frozenset(X)
        stray = X - self.ground_set
        if stray:
            raise InputError(f"elements outside the ground set: {sorted(map(str, stray))}")
        return X

    def rank(self, X: Iterable) -> int:
        return self._rank(self._check(X))

    def _rank(self, X: frozenset) -> int:
        raise NotImplementedError

    def is_independent(self, X: Iterable) -> bool:
        X = self._check(X)
        return self._rank(X) == len(X)

    def span(self, X: Iterable) -> frozenset:
        X = self._check(X)
        r = self._rank(X)
        return frozenset(y for y in self.ground if y in X or self._rank(X | {y}) == r)

    def is_basis_of(self, X: Iterable, Y: Iterable) -> bool:
        X, Y = self._check(X), self._check(Y)
        if not X <= Y:
            raise InputError("a basis of Y must be a subset of Y")
        return len(X) == self._rank(X) == self._rank(Y)

    def describe(self) -> str:
        return type(self).__name__


@dataclass(frozen=True, eq=True)
class FreeMatroid(Matroid):
    ground: tuple

    def _rank(self, X):
        return len(X)

    def describe(self):
        return "free"


@dataclass(frozen=True)
class UniformMatroid(Matroid):
    ground: tuple
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise InputError("uniform matroid rank must be non-negative")

    def _rank(self, X):
        return min(self.k, len(X))

    def describe(self):
        return f"uniform({self.k})"


@dataclass(frozen=True)
class PartitionMatroid(Matroid):
    """Blocks with capacities; elements in no block are loops."""

    ground: tuple
    blocks: tuple
    capacities: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        object.__setattr__(self, "capacities", tuple(self.capacities))
        if len(self.blocks) != len(self.capacities):
            raise InputError("partition matroid needs one capacity per block")
        if any(c < 0 for c in self.capacities):
            raise InputError("block capacities must be non-negative")
        seen: set = set()
        for b in self.blocks:
            if seen & set(b):
                raise InputError("partition blocks overlap")
            seen |= set(b)
        if not seen <= set(self.ground):
            raise InputError("partition blocks leave the ground set")

    def _rank(self, X):
        return sum(min(c, len(X.intersection(b))) for b, c in zip(self.blocks, self.capacities))

    def describe(self):
        return "partition"


@dataclass(frozen=True)
class ExplicitMatroid(Matroid):
    """A matroid given by the list of its bases; rank(X) = max |B ∩ X|."""

    ground: tuple
    bases: tuple

    def __post_init__(self):
        bases = tuple(sorted({frozenset(b) for b in self.bases}, key=lambda b: sorted(b)))
        object.__setattr__(self, "bases", bases)
        if not bases:
            raise InputError("an explicit matroid needs at least one basis")
        if len({len(b) for b in bases}) != 1:
            raise InputError("bases must be equicardinal")
        for b in bases:
            if not b <= set(self.ground):
                raise InputError("basis leaves the ground set")

    def _rank(self, X):
        return max(len(b & X) for b in self.bases)

    def describe(self):
        return "explicit"


class Restriction(Matroid):
    def __init__(self, base: Matroid, S: Iterable):
        S = list(S)
        base._check(S)
        self.base = base
        keep = set(S)
        self.ground = tuple(x for x in base.ground if x in keep)

    def _rank(self, X):
        return self.base._rank(X)

    def describe(self):
        return f"{self.base.describe()}|restricted"


def restriction(M: Matroid, S: Iterable) -> Matroid:
    return Restriction(M, S)


class ParallelExtension(Matroid):
    """Each copy behaves like its original; copies of one element are parallel."""

    def __init__(self, base: Matroid, original: Mapping):
        base._check(original.values())
        self.base = base
        self.original = dict(original)
        self.ground = tuple(self.original)

    def _rank(self, X):
        return self.base._rank(frozenset(self.original[x] for x in X))

    def describe(self):
        return f"{self.base.describe()}|parallel"


def _default_copy_name(x, i):
    return x if i == 0 else f"{x}~{i + 1}"


def parallel_copies(M: Matroid, multiplicity: Mapping, naming: Callable = _default_copy_name) -> tuple:
    """Replace each element x by ``multiplicity[x]`` parallel copies.

    Elements missing from the map keep a single copy under their own name;
    multiplicity 0 drops the element.  Returns (matroid, copy -> original).
    """
    original = {}
    for x in M.ground:
        for i in range(multiplicity.get(x, 1)):
            name = naming(x, i)
            if name in original:
                raise InputError(f"copy name {name!r} is not unique")
            original[name] = x
    return ParallelExtension(M, original), original


class DirectSum(Matroid):
    def __init__(self, parts: Sequence[Matroid]):
        self.parts = tuple(parts)
        ground = []
        for p in self.parts:
            ground.extend(p.ground)
        if len(set(ground)) != len(ground):
            raise InputError("direct sum needs disjoint ground sets")
        self.ground = tuple(ground)

    def _rank(self, X):
        return sum(p._rank(X & p.ground_set) for p in self.parts)

    def describe(self):
        return "direct-sum"


def direct_sum(parts: Sequence[Matroid]) -> Matroid:
    return DirectSum(parts)


def entering_matroid(D: MixedHypergraph, k: int) -> Matroid:
    """Direct sum over non-root vertices v of uniform rank-k on the dyperedges into v."""
    if D.hyperedges:
        raise InputError("the entering matroid is defined on dypergraphs")
    by_head: dict = {}
    for a in D.dyperedges:
        if a.head in D.roots:
            raise InputError(f"dyperedge {a.id!r} enters root {a.head!r}")
        by_head.setdefault(a.head, []).append(a.id)
    parts = [UniformMatroid(tuple(by_head[v]), k) for v in sorted(by_head)]
    return DirectSum(parts)


class CachedRank(Matroid):
    """Memoising wrapper; the wrapped oracle must be pure."""

    def __init__(self, base: Matroid):
        self.base = base
        self.ground = base.ground
        self._rank = lru_cache(maxsize=None)(base._rank)

    def describe(self):
        return self.base.describe()
