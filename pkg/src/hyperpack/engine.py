"""Minimum-weight packings of mixed hyperarborescences.

``solve_matroid_based`` models the element sets of matroid-based packings as
common independent sets of size k|V| of the extended count matroid and the
entering matroid of the directed extension, then decomposes the optimum into
arborescences.  ``solve_reachability`` peels a sink component C, solves the
rest recursively, and settles C through one matroid-based instance in which
every dyperedge entering C is routed through a new vertex t_a.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractError, InputError
from .hypercore import (
    Arc,
    Dyperedge,
    FreshIds,
    Hyperedge,
    MixedHypergraph,
    Packing,
    Weights,
    all_ids,
    check_rooted,
    directed_extension,
    entering_dyperedges,
    induced,
    remove,
    require_rooted,
    singleton_packing,
    weights_of,
)
from .intersect import min_weight_common_independent
from .matroid import CachedRank, Matroid, entering_matroid, parallel_copies, restriction
from .reach import backward_reachable, sink_component
from .tanigawa import CountMatroid, ExtendedCountMatroid
from .verify import Mode, free_on_roots, mode_matroid, validate_packing

log = logging.getLogger(__name__)


# -- root splitting -----------------------------------------------------------

@dataclass(frozen=True)
class SplitRoots:
    hypergraph: MixedHypergraph
    matroid: Matroid
    original: dict  # new root -> original root


def simplify_roots(H: MixedHypergraph, M: Matroid) -> SplitRoots:
    """Give every leaving dyperedge of a root its own parallel copy of that root.

    Roots without leaving dyperedges keep one isolated copy unless they are
    loops of M, in which case they disappear.
    """
    require_rooted(H)
    fresh = FreshIds(all_ids(H))
    leaving = {r: [a for a in H.dyperedges if r in a.tail] for r in H.roots}
    names: dict = {}
    for r in sorted(H.roots):
        n = len(leaving[r])
        if n == 0:
            names[r] = [] if M.rank({r}) == 0 else [r]
        else:
            names[r] = [r] + [fresh(f"{r}~{i + 1}") for i in range(1, n)]

    retail = {}
    for r, arcs in leaving.items():
        for a, copy in zip(arcs, names[r]):
            retail[a.id] = copy
    dyperedges = [Dyperedge(a.id, {retail[a.id]}, a.head) if a.id in retail else a for a in H.dyperedges]
    new_roots = [c for r in sorted(H.roots) for c in names[r]]
    H2 = MixedHypergraph(H.vertices, new_roots, dyperedges, H.hyperedges)

    M2, original = parallel_copies(
        restriction(M, sorted(H.roots)),
        {r: len(names[r]) for r in H.roots},
        naming=lambda r, i: names[r][i],
    )
    if M2.rank(M2.ground) != M.rank(H.roots):
        raise ContractError("root splitting changed the rank of the root set")
    return SplitRoots(H2, M2, original)


# -- matroid-based packings ---------------------------------------------------

def decompose_dyperedge_set(D: MixedHypergraph, M: Matroid, chosen) -> Packing:
    """Split a common independent set of size k|V| into a matroid-based packing.

    D must be a simply rooted dypergraph.  Dyperedges are assigned to roots by
    depth-first search over growth steps; failed partial assignments are
    memoised and parallel dyperedges are placed in id order only.
    """
    if D.hyperedges:
        raise InputError("decomposition works on dypergraphs")
    chosen = sorted(chosen)
    arcs = [D.element(eid) for eid in chosen]
    roots = sorted(D.roots)
    k = M.rank(D.roots)
    indeg: dict = {}
    for a in arcs:
        indeg[a.head] = indeg.get(a.head, 0) + 1
    bad = {v: indeg.get(v, 0) for v in D.vertices if indeg.get(v, 0) != k}
    if bad:
        raise ContractError(f"every vertex needs exactly {k} entering dyperedges", bad)

    # parallel dyperedges are interchangeable: place only the first unused one
    twin_of = {}
    shape_first: dict = {}
    for a in arcs:
        shape = (a.tail, a.head)
        if shape in shape_first:
            twin_of[a.id] = shape_first[shape]
        else:
            shape_first[shape] = a.id
    previous_twin = {}
    last_by_shape: dict = {}
    for a in arcs:
        shape = (a.tail, a.head)
        if shape in last_by_shape:
            previous_twin[a.id] = last_by_shape[shape]
        last_by_shape[shape] = a.id

    reached = {r: {r} for r in roots}
    cover: dict = {v: set() for v in D.vertices}
    assignment: dict = {}
    failed: set = set()
    independent_cache: dict = {}

    def independent(S):
        S = frozenset(S)
        if S not in independent_cache:
            independent_cache[S] = M.is_independent(S)
        return independent_cache[S]

    def dead():
        for a in arcs:
            if a.id in assignment:
                continue
            if not any(a.head not in reached[r] and independent(cover[a.head] | {r}) for r in roots):
                return True
        return False

    def search():
        if len(assignment) == len(arcs):
            return True
        key = frozenset(assignment.items())
        if key in failed or dead():
            failed.add(key)
            return False
        for a in arcs:
            if a.id in assignment:
                continue
            prev = previous_twin.get(a.id)
            if prev is not None and prev not in assignment:
                continue
            for r in roots:
                if a.head in reached[r] or not (a.tail & reached[r]):
                    continue
                if not independent(cover[a.head] | {r}):
                    continue
                u = min(a.tail & reached[r])
                assignment[a.id] = (r, u)
                reached[r].add(a.head)
                cover[a.head].add(r)
                if search():
                    return True
                del assignment[a.id]
                reached[r].discard(a.head)
                cover[a.head].discard(r)
        failed.add(key)
        return False

    if not search():
        raise ContractError("the dyperedge set does not decompose into a matroid-based packing", chosen)
    by_root: dict = {r: [] for r in roots}
    for a in arcs:
        r, u = assignment[a.id]
        by_root[r].append(Arc(a.id, u, a.head))
    return Packing(by_root)


def solve_matroid_based(H: MixedHypergraph, M: Matroid, weights=None) -> Packing | None:
    """Minimum-weight matroid-based packing, or None when none exists."""
    require_rooted(H)
    M = mode_matroid(H, M, Mode.MATROID_BASED)
    w = weights_of(weights)
    k = M.rank(H.roots)
    if not H.vertices or k == 0:
        return singleton_packing(H.roots)

    split = simplify_roots(H, M)
    ext, bundle = directed_extension(split.hypergraph)
    count = ExtendedCountMatroid(CountMatroid(split.hypergraph, CachedRank(split.matroid)), bundle)
    entering = entering_matroid(ext, k)
    ext_weights = {a.id: w[bundle.get(a.id, a.id)] for a in ext.dyperedges}
    chosen = min_weight_common_independent(count, entering, ext_weights, k * len(H.vertices))
    if chosen is None:
        return None

    split_packing = decompose_dyperedge_set(ext, split.matroid, chosen)
    merged: dict = {r: [] for r in H.roots}
    for copy, arcs in split_packing.arcs.items():
        r = split.original[copy]
        for arc in arcs:
            tail = split.original.get(arc.tail, arc.tail)
            merged[r].append(Arc(bundle.get(arc.id, arc.id), tail, arc.head))
    packing = Packing(merged)
    _assert_valid(H, M, packing, Mode.MATROID_BASED)
    return packing


def _assert_valid(H, M, packing, mode):
    problems = validate_packing(H, M, packing, mode)
    if problems:
        raise ContractError(f"solver produced an invalid {mode.value} packing: {problems}", packing)


# -- reachability recursion ---------------------------------------------------

@dataclass(frozen=True)
class ReducedInstance:
    hypergraph: MixedHypergraph
    matroid: Matroid
    weights: Weights
    component: frozenset
    t_vertex: dict   # entering dyperedge id -> its new vertex t_a
    primed: dict     # id of a' -> id of a
    auxiliary: frozenset  # ids of the arcs entering T


def build_reduced_instance(H: MixedHypergraph, M: Matroid, C, B1: Packing, weights=None) -> ReducedInstance:
    C = frozenset(C)
    w = weights_of(weights)
    if any(a.tail & C and a.head not in C for a in H.dyperedges) or any(
        e.members & C and e.members - C for e in H.hyperedges
    ):
        raise InputError("the component must have no leaving dyperedge or hyperedge")
    R2 = backward_reachable(H, C) & H.roots
    M2 = restriction(M, sorted(R2))
    k2 = M2.rank(R2)
    inside = induced(H, C | R2)
    fresh = FreshIds(all_ids(H))

    dyperedges = [a for a in inside.dyperedges if a.tail <= C]
    new_weights = {x.id: w[x.id] for x in dyperedges + list(inside.hyperedges)}
    t_vertex, primed, auxiliary = {}, {}, []
    T = []
    for a in entering_dyperedges(H, C):
        t = fresh(f"t[{a.id}]")
        T.append(t)
        t_vertex[a.id] = t
        pid = fresh(f"{a.id}'")
        primed[pid] = a.id
        dyperedges.append(Dyperedge(pid, (a.tail & C) | {t}, a.head))
        new_weights[pid] = w[a.id]
        for r in sorted(R2):
            if a.tail & B1.vertices(r):
                rid = fresh(f"{r}>{t}")
                dyperedges.append(Dyperedge(rid, {r}, t))
                auxiliary.append(rid)
        for i in range(k2):
            hid = fresh(f"{a.head}>{t}#{i + 1}")
            dyperedges.append(Dyperedge(hid, {a.head}, t))
            auxiliary.append(hid)
    for aid in auxiliary:
        new_weights[aid] = Fraction(0)

    H2 = MixedHypergraph(C | frozenset(T), R2, dyperedges, inside.hyperedges)
    return ReducedInstance(H2, M2, Weights(new_weights), C, t_vertex, primed, frozenset(auxiliary))


def merge_packings(H: MixedHypergraph, B1: Packing, B2: Packing, reduced: ReducedInstance) -> Packing:
    t_of_primed = {pid: reduced.t_vertex[aid] for pid, aid in reduced.primed.items()}
    merged = {}
    for r in sorted(H.roots):
        arcs = list(B1.arcs.get(r, ()))
        if r in B2.arcs:
            reach1 = B1.vertices(r)
            for arc in B2.arcs[r]:
                if arc.id in reduced.auxiliary:
                    continue
                if arc.id in reduced.primed:
                    a = H.element(reduced.primed[arc.id])
                    if arc.tail == t_of_primed[arc.id]:
                        choices = a.tail & reach1
                        if not choices:
                            raise ContractError(f"no tail vertex of {a.id} is covered by {r}", arc)
                        arcs.append(Arc(a.id, min(choices), arc.head))
                    else:
                        arcs.append(Arc(a.id, arc.tail, arc.head))
                else:
                    arcs.append(arc)
        merged[r] = arcs
    return Packing(merged)


def solve_reachability(H: MixedHypergraph, M: Matroid, weights=None) -> Packing | None:
    """Minimum-weight matroid-reachability-based packing, or None."""
    require_rooted(H)
    M = mode_matroid(H, M, Mode.MATROID_REACHABILITY)
    w = weights_of(weights)
    if not H.vertices:
        return singleton_packing(H.roots)

    C = sink_component(H)
    H1 = remove(H, C)
    for v in sorted(H1.vertices):
        if backward_reachable(H1, {v}) != backward_reachable(H, {v}):
            raise ContractError(f"peeling {sorted(C)} changed what reaches {v}")
    B1 = solve_reachability(H1, M, w)
    if B1 is None:
        return None
    reduced = build_reduced_instance(H, M, C, B1, w)
    B2 = solve_matroid_based(reduced.hypergraph, reduced.matroid, reduced.weights)
    if B2 is None:
        return None
    packing = merge_packings(H, B1, B2, reduced)
    expected = B1.weight(w) + B2.weight(reduced.weights)
    if packing.weight(w) != expected:
        raise ContractError("merged weight differs from the sum of the parts", (packing.weight(w), expected))
    _assert_valid(H, M, packing, Mode.MATROID_REACHABILITY)
    return packing


# -- front doors --------------------------------------------------------------

def solve_spanning(D: MixedHypergraph, weights=None) -> Packing | None:
    packing = solve_matroid_based(D, free_on_roots(D), weights)
    if packing is not None:
        _assert_valid(D, None, packing, Mode.SPANNING)
    return packing


def solve_kkt(D: MixedHypergraph, weights=None) -> Packing | None:
    packing = solve_reachability(D, free_on_roots(D), weights)
    if packing is not None:
        _assert_valid(D, None, packing, Mode.REACHABILITY)
    return packing


def solve(H: MixedHypergraph, M: Matroid | None, weights, mode) -> Packing | None:
    mode = Mode.parse(mode)
    if mode is Mode.SPANNING:
        return solve_spanning(H, weights)
    if mode is Mode.REACHABILITY:
        return solve_kkt(H, weights)
    if mode is Mode.MATROID_BASED:
        return solve_matroid_based(H, M, weights)
    return solve_reachability(H, M, weights)
