"""Reachability by mixed hyperpaths and the sink-component choice that drives
the reachability recursion."""
from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable

from .errors import InputError
from .hypercore import MixedHypergraph


def _step_graph(H: MixedHypergraph) -> dict:
    """u -> set of vertices reachable from u in one trimmed element."""
    succ = defaultdict(set)
    for a in H.dyperedges:
        for u in a.tail:
            succ[u].add(a.head)
    for e in H.hyperedges:
        for u in e.members:
            succ[u] |= e.members - {u}
    return succ


def _closure(succ, X) -> frozenset:
    seen = set(X)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for v in succ.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


def forward_reachable(H: MixedHypergraph, X: Iterable[str]) -> frozenset:
    X = H._check_nodes(X)
    return _closure(_step_graph(H), X)


def backward_reachable(H: MixedHypergraph, X: Iterable[str]) -> frozenset:
    X = H._check_nodes(X)
    pred = defaultdict(set)
    for u, vs in _step_graph(H).items():
        for v in vs:
            pred[v].add(u)
    return _closure(pred, X)


def strongly_connected_components(H: MixedHypergraph) -> list:
    """Mutual-reachability classes of V ∪ R, sorted by smallest member."""
    succ = _step_graph(H)
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps = []
    counter = 0
    for start in sorted(H.nodes):
        if start in index:
            continue
        # iterative Tarjan
        work = [(start, iter(sorted(succ.get(start, ()))))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            u, it = work[-1]
            advanced = False
            for v in it:
                if v not in index:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack.add(v)
                    work.append((v, iter(sorted(succ.get(v, ())))))
                    advanced = True
                    break
                if v in on_stack:
                    low[u] = min(low[u], index[v])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
            if low[u] == index[u]:
                comp = set()
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.add(x)
                    if x == u:
                        break
                comps.append(frozenset(comp))
    return sorted(comps, key=min)


def sink_component(H: MixedHypergraph) -> frozenset:
    """A strongly connected class of H - R that no dyperedge or hyperedge leaves.

    Ties go to the class with the smallest member id.
    """
    if not H.vertices:
        raise InputError("no sink component: the instance has no non-root vertices")
    for comp in strongly_connected_components(H):
        if comp & H.roots:
            continue
        if any(a.tail & comp and a.head not in comp for a in H.dyperedges):
            continue
        if any(e.members & comp and e.members - comp for e in H.hyperedges):
            continue
        return comp
    raise InputError("no sink component: is the instance rooted?")
