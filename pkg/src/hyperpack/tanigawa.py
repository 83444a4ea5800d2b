"""Count matroid of a matroid-rooted mixed hypergraph.

For a set X of elements let V_X be the non-root vertices it touches and R_X
the roots touched by its dyperedges.  With k = r_M(R) the count function is

    b(X) = k * (|V_X| - 1) + r_M(R_X)

and X is independent when b(Y) >= |Y| for every nonempty Y ⊆ X.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .errors import InputError
from .hypercore import Dyperedge, MixedHypergraph, check_rooted
from .matroid import Matroid


@dataclass(frozen=True)
class Deficiency:
    """A nonempty Y with b(Y) - |Y| < 0."""

    subset: frozenset
    b: int

    @property
    def slack(self) -> int:
        return self.b - len(self.subset)


class CountMatroid:
    def __init__(self, H: MixedHypergraph, M: Matroid):
        rc = check_rooted(H)
        if not rc.rooted:
            raise InputError(f"count matroid needs a rooted instance (root {rc.root!r})")
        M._check(H.roots)
        self.H = H
        self.M = M
        self.k = M.rank(H.roots)
        self.ground = tuple(x.id for x in H.dyperedges + H.hyperedges)
        order = sorted(H.vertices)
        self._bit = {v: 1 << i for i, v in enumerate(order)}
        self._vmask = {}
        self._root = {}
        for x in H.dyperedges + H.hyperedges:
            mask = 0
            for v in x.endpoints:
                mask |= self._bit.get(v, 0)
            self._vmask[x.id] = mask
            if isinstance(x, Dyperedge):
                roots = x.tail & H.roots
                self._root[x.id] = next(iter(roots)) if roots else None
            else:
                self._root[x.id] = None
        self._root_rank = lru_cache(maxsize=None)(self._rank_of_roots)
        self._independent = lru_cache(maxsize=None)(self._independent_uncached)
        self._extension_cache: dict = {}

    def _rank_of_roots(self, roots: frozenset) -> int:
        return self.M.rank(roots)

    def _check(self, X) -> frozenset:
        X = frozenset(X)
        stray = X - set(self.ground)
        if stray:
            raise InputError(f"unknown elements {sorted(stray)}")
        return X

    def _b(self, X) -> int:
        mask = 0
        roots = set()
        for x in X:
            mask |= self._vmask[x]
            r = self._root[x]
            if r is not None:
                roots.add(r)
        return self.k * (bin(mask).count("1") - 1) + self._root_rank(frozenset(roots))

    def b(self, X: Iterable[str]) -> int:
        X = self._check(X)
        if not X:
            raise InputError("b is only defined on nonempty sets")
        return self._b(X)

    def min_deficiency(self, X: Iterable[str]) -> Deficiency | None:
        """Minimise b(Y) - |Y| over nonempty Y ⊆ X using closed sets only.

        Every element has at most one root endpoint, so adding an element whose
        non-root endpoints already lie in V_Y raises b by at most one: some
        minimiser is {x ∈ X : endpoints(x) ∩ V ⊆ V'} for a vertex set V'.
        """
        X = sorted(self._check(X))
        if not X:
            return None
        full = 0
        for x in X:
            full |= self._vmask[x]
        best = None
        sub = full
        while True:
            Y = [x for x in X if self._vmask[x] & ~sub == 0]
            if Y:
                bY = self._b(Y)
                if best is None or bY - len(Y) < best.slack:
                    best = Deficiency(frozenset(Y), bY)
            if sub == 0:
                break
            sub = (sub - 1) & full
        return best

    def brute_force_min_deficiency(self, X: Iterable[str]) -> Deficiency | None:
        """Reference minimiser over all 2^|X| - 1 nonempty subsets."""
        X = sorted(self._check(X))
        best = None
        for size in range(1, len(X) + 1):
            for Y in combinations(X, size):
                bY = self._b(Y)
                if best is None or bY - size < best.slack:
                    best = Deficiency(frozenset(Y), bY)
        return best

    def can_add(self, independent: Iterable[str], x: str) -> bool:
        """Whether independent + x is independent; the first argument must be.

        Only subsets containing x can be deficient, so only vertex sets
        containing the vertices of x are enumerated.
        """
        key = (frozenset(independent), x)
        cached = self._extension_cache.get(key)
        if cached is None:
            cached = self._extension_cache[key] = self._can_add(*key)
        return cached

    def _can_add(self, independent: frozenset, x: str) -> bool:
        X = sorted(self._check(independent | {x}))
        own = self._vmask[x]
        full = 0
        for y in X:
            full |= self._vmask[y]
        free = full & ~own
        sub = free
        while True:
            V = sub | own
            Y = [y for y in X if self._vmask[y] & ~V == 0]
            if self._b(Y) < len(Y):
                return False
            if sub == 0:
                return True
            sub = (sub - 1) & free

    def violation(self, X: Iterable[str]) -> Deficiency | None:
        d = self.min_deficiency(X)
        return d if d is not None and d.slack < 0 else None

    def _independent_uncached(self, X: frozenset) -> bool:
        return self.violation(X) is None

    def is_independent(self, X: Iterable[str]) -> bool:
        return self._independent(self._check(X))


def simple_count_matroid(H: MixedHypergraph, M: Matroid) -> CountMatroid:
    rc = check_rooted(H)
    if not rc.simply_rooted:
        raise InputError("the count matroid oracle is only used on simply rooted instances")
    return CountMatroid(H, M)


class ExtendedCountMatroid:
    """Count matroid with each hyperedge e replaced by |e| parallel copies.

    ``bundle`` maps the id of each orientation in the directed extension to the
    hyperedge it orients; dyperedge ids map to themselves.
    """

    def __init__(self, base: CountMatroid, bundle: Mapping[str, str]):
        self.base = base
        self.bundle = dict(bundle)
        self.ground = tuple(a.id for a in base.H.dyperedges) + tuple(self.bundle)
        self._ground_set = frozenset(self.ground)

    def project(self, X: Iterable[str]) -> list:
        return [self.bundle.get(x, x) for x in X]

    def is_independent(self, X: Iterable[str]) -> bool:
        X = frozenset(X)
        if not X <= self._ground_set:
            raise InputError(f"unknown elements {sorted(X - self._ground_set)}")
        projected = self.project(X)
        if len(set(projected)) != len(projected):
            return False
        return self.base.is_independent(projected)

    def can_add(self, independent: Iterable[str], x: str) -> bool:
        taken = set(self.project(independent))
        source = self.bundle.get(x, x)
        if source in taken:
            return False
        return self.base.can_add(taken, source)
