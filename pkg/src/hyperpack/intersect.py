"""Weighted matroid intersection by shortest augmenting paths.

Both matroids are independence oracles over a shared ground set.  Starting
from the empty set, each round augments along a minimum-length path in the
exchange graph (fewest arcs among those), which keeps the current set of
minimum weight among common independent sets of its size.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Protocol

from .errors import ContractError, InputError


class IndependenceOracle(Protocol):
    """Oracles may also offer ``can_add(I, x)`` for independent I as a fast path."""

    ground: tuple

    def is_independent(self, X: Iterable) -> bool: ...


def _shared_ground(m1, m2) -> list:
    if set(m1.ground) != set(m2.ground):
        raise InputError("matroids must share the ground set")
    return sorted(m1.ground)


def _extends(m, independent: set, x) -> bool:
    """Whether independent + x is independent, given that ``independent`` is."""
    can_add = getattr(m, "can_add", None)
    if can_add is not None:
        return can_add(independent, x)
    return m.is_independent(independent | {x})


def _augmenting_path(m1, m2, current: set, ground: list, weight) -> list | None:
    inside = [y for y in ground if y in current]
    outside = [x for x in ground if x not in current]

    sources = [x for x in outside if _extends(m1, current, x)]
    sinks = {x for x in outside if _extends(m2, current, x)}
    if not sources or not sinks:
        return None

    succ: dict = {v: [] for v in ground}
    for y in inside:
        without = current - {y}
        for x in outside:
            if _extends(m1, without, x):
                succ[y].append(x)
            if _extends(m2, without, x):
                succ[x].append(y)

    def length(v):
        return -weight(v) if v in current else weight(v)

    # Bellman-Ford on (length, arcs) pairs; lexicographic order has no
    # negative cycles once the current set is extreme.
    dist = {x: (length(x), 0) for x in sources}
    pred = {x: None for x in sources}
    for _ in range(len(ground)):
        changed = False
        for u in ground:
            if u not in dist:
                continue
            du = dist[u]
            for v in succ[u]:
                cand = (du[0] + length(v), du[1] + 1)
                if v not in dist or cand < dist[v]:
                    dist[v] = cand
                    pred[v] = u
                    changed = True
        if not changed:
            break
    else:
        for u in ground:
            if u in dist:
                for v in succ[u]:
                    if (dist[u][0] + length(v), dist[u][1] + 1) < dist[v]:
                        raise ContractError("negative cycle in the exchange graph", (u, v))

    reached = [x for x in ground if x in sinks and x in dist]
    if not reached:
        return None
    end = min(reached, key=lambda x: dist[x])
    path = []
    v = end
    while v is not None:
        path.append(v)
        v = pred[v]
        if len(path) > len(ground):
            raise ContractError("predecessor cycle in the exchange graph", path)
    return path[::-1]


def _check_common(m1, m2, X):
    if not (m1.is_independent(X) and m2.is_independent(X)):
        raise ContractError("augmentation produced a set dependent in one matroid", frozenset(X))


def min_weight_common_independent(m1, m2, weights: Mapping | None = None, size: int = 0) -> frozenset | None:
    """Minimum-weight common independent set of exactly ``size`` elements.

    Returns None when no common independent set of that size exists.
    Weights may be negative; missing weights count as zero.
    """
    if size < 0:
        raise InputError("target size must be non-negative")
    ground = _shared_ground(m1, m2)
    weights = weights or {}

    def weight(x):
        return Fraction(weights.get(x, 0))

    current: set = set()
    for _ in range(size):
        path = _augmenting_path(m1, m2, current, ground, weight)
        if path is None:
            return None
        current.symmetric_difference_update(path)
        _check_common(m1, m2, current)
    return frozenset(current)


def max_common_independent(m1, m2) -> frozenset:
    """A common independent set of maximum cardinality."""
    ground = _shared_ground(m1, m2)
    current: set = set()
    while True:
        path = _augmenting_path(m1, m2, current, ground, lambda x: 0)
        if path is None:
            return frozenset(current)
        current.symmetric_difference_update(path)
        _check_common(m1, m2, current)
