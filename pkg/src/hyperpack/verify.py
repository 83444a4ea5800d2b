"""Ground truth for the solvers.

Three independent tools live here: a packing validator that checks the
definitions literally, exhaustive checkers for the cut and biset conditions
that characterise feasibility, and a brute-force search for minimum-weight
packings.  None of them calls the solver pipeline.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import InputError, SizeLimitError
from .hypercore import (
    Arc,
    Biset,
    Dyperedge,
    MixedHypergraph,
    Packing,
    biset_in_degree,
    hyperedges_entering_subpartition,
    in_neighbours,
    weights_of,
)
from .matroid import FreeMatroid, Matroid
from .reach import backward_reachable, forward_reachable, strongly_connected_components


class Mode(str, enum.Enum):
    SPANNING = "spanning"
    REACHABILITY = "reachability"
    MATROID_BASED = "matroid-based"
    MATROID_REACHABILITY = "matroid-reachability"

    @classmethod
    def parse(cls, text) -> "Mode":
        if isinstance(text, Mode):
            return text
        aliases = {"kkt": "reachability", "matroid_based": "matroid-based",
                   "matroid_reachability": "matroid-reachability"}
        try:
            return cls(aliases.get(text, text))
        except ValueError:
            raise InputError(f"unknown mode {text!r}") from None

    @property
    def uses_matroid(self) -> bool:
        return self in (Mode.MATROID_BASED, Mode.MATROID_REACHABILITY)

    @property
    def reachability(self) -> bool:
        return self in (Mode.REACHABILITY, Mode.MATROID_REACHABILITY)


def free_on_roots(H: MixedHypergraph) -> Matroid:
    return FreeMatroid(tuple(sorted(H.roots)))


def mode_matroid(H: MixedHypergraph, M: Matroid | None, mode: Mode) -> Matroid:
    """The matroid a mode actually uses: free unless the mode is matroidal."""
    if mode.uses_matroid:
        if M is None:
            raise InputError(f"mode {mode.value} needs a matroid")
        M._check(H.roots)
        if M.ground_set != H.roots:
            raise InputError("the matroid ground set must be the root set")
        return M
    return free_on_roots(H)


# -- packing validation -------------------------------------------------------

def _is_valid_trim(x, arc: Arc) -> bool:
    if isinstance(x, Dyperedge):
        return arc.head == x.head and arc.tail in x.tail
    return arc.tail != arc.head and arc.tail in x.members and arc.head in x.members


def validate_packing(H: MixedHypergraph, M: Matroid | None, packing: Packing, mode) -> list:
    """Return the list of problems found; an empty list means the packing is valid."""
    mode = Mode.parse(mode)
    M = mode_matroid(H, M, mode)
    stray_roots = set(packing.roots) - H.roots
    if stray_roots:
        raise InputError(f"packing names unknown roots {sorted(stray_roots)}")
    for arcs in packing.arcs.values():
        for arc in arcs:
            H.element(arc.id)

    problems = []
    for eid, n in sorted(Counter(packing.all_elements()).items()):
        if n > 1:
            problems.append(f"element {eid} is used {n} times")

    arcs_of = {r: packing.arcs.get(r, ()) for r in sorted(H.roots)}
    vertices_of = {}
    for r, arcs in arcs_of.items():
        for arc in arcs:
            if not _is_valid_trim(H.element(arc.id), arc):
                problems.append(f"arc {arc.tail}->{arc.head} is not a trimming of {arc.id}")
        heads = Counter(a.head for a in arcs)
        for v, n in sorted(heads.items()):
            if n > 1:
                problems.append(f"{v} has {n} entering arcs in the arborescence of {r}")
            if v not in H.vertices:
                problems.append(f"arborescence of {r} enters non-vertex {v}")
        reached = {r}
        pending = list(arcs)
        grown = True
        while grown:
            rest = [a for a in pending if a.tail not in reached]
            grown = len(rest) < len(pending)
            reached.update(a.head for a in pending if a.tail in reached)
            pending = rest
        if pending:
            problems.append(f"arborescence of {r} is not connected from its root")
        vertices_of[r] = frozenset(a.head for a in arcs) | {r}

    if mode is Mode.SPANNING:
        for r in arcs_of:
            if vertices_of[r] != H.vertices | {r}:
                problems.append(f"arborescence of {r} does not span")
    elif mode is Mode.REACHABILITY:
        for r in arcs_of:
            if vertices_of[r] != forward_reachable(H, {r}):
                problems.append(f"arborescence of {r} does not cover exactly what {r} reaches")
    else:
        for v in sorted(H.vertices):
            cover = frozenset(r for r in arcs_of if v in vertices_of[r])
            target = H.roots if mode is Mode.MATROID_BASED else backward_reachable(H, {v}) & H.roots
            if not cover <= target or not M.is_basis_of(cover, target):
                problems.append(f"roots covering {v} ({sorted(cover)}) are not a basis")
    return problems


# -- condition checkers -------------------------------------------------------

@dataclass(frozen=True)
class ConditionViolation:
    condition: str
    lhs: int
    rhs: int
    vertex_set: frozenset | None = None
    bisets: tuple = ()
    component: frozenset | None = None

    def to_doc(self) -> dict:
        doc = {"condition": self.condition, "lhs": self.lhs, "rhs": self.rhs}
        if self.vertex_set is not None:
            doc["set"] = sorted(self.vertex_set)
        if self.bisets:
            doc["bisets"] = [{"outer": sorted(b.outer), "inner": sorted(b.inner)} for b in self.bisets]
        if self.component is not None:
            doc["component"] = sorted(self.component)
        return doc


CUT_CONDITIONS = {
    Mode.SPANNING: "spanning-cut",
    Mode.REACHABILITY: "reachability-cut",
    Mode.MATROID_BASED: "matroid-cut",
    Mode.MATROID_REACHABILITY: "matroid-reachability-cut",
}

BISET_CONDITIONS = {
    Mode.SPANNING: "spanning-biset",
    Mode.REACHABILITY: "reachability-biset",
    Mode.MATROID_BASED: "matroid-biset",
    Mode.MATROID_REACHABILITY: "matroid-reachability-biset",
}


def cut_sides(D: MixedHypergraph, M: Matroid | None, X: Iterable[str], mode) -> tuple:
    """(in-degree of X, required in-degree) for a vertex set X of a digraph."""
    mode = Mode.parse(mode)
    M = mode_matroid(D, M, mode)
    X = D._check_nodes(X)
    lhs = sum(1 for a in D.dyperedges if a.head in X and a.tail - X)
    R = D.roots
    if mode is Mode.SPANNING:
        rhs = len(R - X)
    elif mode is Mode.REACHABILITY:
        rhs = len(backward_reachable(D, X) & R) - len(X & R)
    elif mode is Mode.MATROID_BASED:
        rhs = M.rank(R) - M.rank(X & R)
    else:
        rhs = M.rank(backward_reachable(D, X) & R) - M.rank(X & R)
    return lhs, rhs


def check_digraph_condition(D: MixedHypergraph, M: Matroid | None, mode, cap: int = 12) -> ConditionViolation | None:
    """Enumerate all X ⊆ V ∪ R meeting V; return the first violated cut or None."""
    mode = Mode.parse(mode)
    if not D.is_digraph:
        raise InputError("cut conditions are stated for digraphs")
    M = mode_matroid(D, M, mode)
    nodes = sorted(D.nodes)
    if len(nodes) > cap:
        raise SizeLimitError(f"{len(nodes)} vertices exceed the enumeration cap {cap}")
    R = D.roots
    back = {v: backward_reachable(D, {v}) for v in nodes}
    arcs = [(next(iter(a.tail)), a.head) for a in D.dyperedges]
    rank = _memo_rank(M)
    k = rank(R)
    for mask in range(1, 1 << len(nodes)):
        X = frozenset(v for i, v in enumerate(nodes) if mask >> i & 1)
        XV = X & D.vertices
        if not XV:
            continue
        XR = X & R
        lhs = sum(1 for u, v in arcs if v in X and u not in X)
        if mode is Mode.SPANNING:
            rhs = len(R - X)
        elif mode is Mode.MATROID_BASED:
            if XR != frozenset(u for u, v in arcs if v in XV and u not in XV) & R:
                continue
            rhs = k - rank(XR)
        else:
            P = frozenset().union(*(back[v] for v in X)) & R
            rhs = len(P) - len(XR) if mode is Mode.REACHABILITY else rank(P) - rank(XR)
        if lhs < rhs:
            return ConditionViolation(CUT_CONDITIONS[mode], lhs, rhs, vertex_set=X)
    return None


def _memo_rank(M: Matroid):
    cache = {}

    def rank(X):
        X = frozenset(X)
        if X not in cache:
            cache[X] = M.rank(X)
        return cache[X]

    return rank


def _subpartitions(items: list, max_parts: int | None):
    """All families of disjoint nonempty subsets of ``items``."""
    blocks: list = []

    def rec(i):
        if i == len(items):
            yield [frozenset(b) for b in blocks]
            return
        yield from rec(i + 1)
        for b in blocks:
            b.append(items[i])
            yield from rec(i + 1)
            b.pop()
        if max_parts is None or len(blocks) < max_parts:
            blocks.append([items[i]])
            yield from rec(i + 1)
            blocks.pop()

    yield from rec(0)


def _nonempty_subsets(items: list):
    for mask in range(1, 1 << len(items)):
        yield frozenset(v for i, v in enumerate(items) if mask >> i & 1)


def biset_family_sides(H: MixedHypergraph, M: Matroid | None, bisets, mode, component=None) -> tuple:
    """(left side, right side) of the biset condition for one subpartition."""
    mode = Mode.parse(mode)
    M = mode_matroid(H, M, mode)
    bisets = list(bisets)
    lhs = hyperedges_entering_subpartition(H.hyperedges, [b.inner for b in bisets])
    lhs += sum(biset_in_degree(H, b) for b in bisets)
    if mode.reachability:
        target = M.rank(backward_reachable(H, component) & H.roots)
        rhs = sum(target - M.rank(b.wall & H.roots) for b in bisets)
    else:
        k = M.rank(H.roots)
        rhs = sum(k - M.rank(b.wall) for b in bisets)
    return lhs, rhs


def check_biset_condition(
    H: MixedHypergraph, M: Matroid | None, mode, cap: int = 6, max_parts: int | None = None
) -> ConditionViolation | None:
    """Exhaustively check the biset-subpartition condition for ``mode``.

    ``spanning`` and ``reachability`` use the free matroid on the roots.  The
    per-part terms are independent once the inner sets are fixed, so only
    inner families are enumerated; walls are forced (matroid-based) or chosen
    per part to minimise the slack (reachability).
    """
    mode = Mode.parse(mode)
    if mode.uses_matroid:
        M = mode_matroid(H, M, mode)
    else:
        M = free_on_roots(H)
    if len(H.vertices) > cap:
        raise SizeLimitError(f"{len(H.vertices)} vertices exceed the enumeration cap {cap}")
    rank = _memo_rank(M)
    R = H.roots

    if not mode.reachability:
        k = rank(R)
        term = {}
        for inner in _nonempty_subsets(sorted(H.vertices)):
            wall = in_neighbours(H, inner) & R
            b = Biset(inner | wall, inner)
            term[inner] = (biset_in_degree(H, b) + rank(wall) - k, b)
        return _scan_families(H, sorted(H.vertices), term, max_parts, BISET_CONDITIONS[mode], None, k)

    for comp in strongly_connected_components(H):
        if comp & R:
            continue
        target = rank(backward_reachable(H, comp) & R)
        outside = sorted(H.nodes - comp)
        walls = [frozenset()]
        for W in _nonempty_subsets(outside):
            if backward_reachable(H, W) == W:
                walls.append(W)
        term = {}
        for inner in _nonempty_subsets(sorted(comp)):
            best = None
            for W in walls:
                b = Biset(inner | W, inner)
                value = biset_in_degree(H, b) + rank(W & R) - target
                if best is None or value < best[0]:
                    best = (value, b)
            term[inner] = best
        found = _scan_families(H, sorted(comp), term, max_parts,
                               BISET_CONDITIONS[mode], comp, target)
        if found is not None:
            return found
    return None


def _scan_families(H, items, term, max_parts, name, comp, target):
    for family in _subpartitions(items, max_parts):
        if not family:
            continue
        slack = hyperedges_entering_subpartition(H.hyperedges, family)
        slack += sum(term[inner][0] for inner in family)
        if slack < 0:
            bisets = tuple(term[inner][1] for inner in family)
            lhs = hyperedges_entering_subpartition(H.hyperedges, family)
            lhs += sum(biset_in_degree(H, b) for b in bisets)
            return ConditionViolation(name, lhs, lhs - slack, bisets=bisets, component=comp)
    return None


def condition_verdict(H: MixedHypergraph, M: Matroid | None, mode, cap: int | None = None) -> ConditionViolation | None:
    """Cut condition on digraphs, biset condition otherwise.

    ``cap`` bounds |V ∪ R| for cut enumeration and |V| for biset enumeration;
    None keeps each checker's default.
    """
    mode = Mode.parse(mode)
    if H.is_digraph:
        return check_digraph_condition(H, M, mode) if cap is None else check_digraph_condition(H, M, mode, cap=cap)
    return check_biset_condition(H, M, mode) if cap is None else check_biset_condition(H, M, mode, cap=cap)


# -- exhaustive optimum -------------------------------------------------------

def _trimmings(x) -> list:
    if isinstance(x, Dyperedge):
        return [(u, x.head) for u in sorted(x.tail)]
    return [(u, v) for u in sorted(x.members) for v in sorted(x.members) if u != v]


def enumerate_arborescences(H: MixedHypergraph, r: str) -> list:
    """Every trimmed r-hyperarborescence, one per (element set, vertex set) pair."""
    elements = sorted(H.elements.values(), key=lambda x: x.id)
    found: dict = {}
    seen: set = set()

    def grow(reached, arcs):
        key = frozenset(arcs)
        if key in seen:
            return
        seen.add(key)
        used = frozenset(a.id for a in arcs)
        found.setdefault((used, frozenset(reached)), tuple(arcs))
        for x in elements:
            if x.id in used:
                continue
            for u, v in _trimmings(x):
                if u in reached and v not in reached and v in H.vertices:
                    grow(reached | {v}, arcs + [Arc(x.id, u, v)])

    grow(frozenset({r}), [])
    return [(used, verts, arcs) for (used, verts), arcs in found.items()]


def exhaustive_min_packing(H: MixedHypergraph, M: Matroid | None, weights, mode, cap: int = 8) -> tuple | None:
    """Brute-force minimum-weight valid packing: (weight, Packing) or None."""
    mode = Mode.parse(mode)
    M = mode_matroid(H, M, mode)
    if len(H.elements) > cap:
        raise SizeLimitError(f"{len(H.elements)} elements exceed the enumeration cap {cap}")
    w = weights_of(weights)
    roots = sorted(H.roots)
    rank = _memo_rank(M)

    target = {}
    for v in H.vertices:
        target[v] = H.roots if mode in (Mode.SPANNING, Mode.MATROID_BASED) else backward_reachable(H, {v}) & H.roots

    options = {}
    for r in roots:
        opts = enumerate_arborescences(H, r)
        if mode is Mode.SPANNING:
            opts = [o for o in opts if o[1] == H.vertices | {r}]
        elif mode is Mode.REACHABILITY:
            reach = forward_reachable(H, {r})
            opts = [o for o in opts if o[1] == reach]
        else:
            opts = [o for o in opts if all(r in target[v] for v in o[1] - {r})]
        opts.sort(key=lambda o: (sorted(o[0]), sorted(o[1])))
        options[r] = opts

    best: list = [None]

    def rec(i, used, cover, chosen, total):
        if i == len(roots):
            for v in H.vertices:
                c = cover.get(v, frozenset())
                if len(c) != rank(target[v]):
                    return
            if best[0] is None or total < best[0][0]:
                best[0] = (total, Packing(dict(chosen)))
            return
        r = roots[i]
        for elems, verts, arcs in options[r]:
            if elems & used:
                continue
            new_cover = dict(cover)
            ok = True
            for v in verts - {r}:
                c = new_cover.get(v, frozenset()) | {r}
                if rank(c) != len(c):
                    ok = False
                    break
                new_cover[v] = c
            if not ok:
                continue
            chosen[r] = arcs
            rec(i + 1, used | elems, new_cover, chosen, total + w.total(elems))
            del chosen[r]

    rec(0, frozenset(), {}, {}, Fraction(0))
    return best[0]


# -- solver cross-check -------------------------------------------------------

@dataclass
class CrossCheckReport:
    mode: Mode
    solver_feasible: bool
    condition_ok: bool
    violation: ConditionViolation | None = None
    solver_weight: Fraction | None = None
    exhaustive_weight: Fraction | None = None
    problems: list = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return not self.problems


def cross_check(H: MixedHypergraph, M: Matroid | None, weights, mode, optimality: bool = True) -> CrossCheckReport:
    """Compare the solver against the condition checker and brute force."""
    from .engine import solve

    mode = Mode.parse(mode)
    packing = solve(H, M, weights, mode)
    violation = condition_verdict(H, M, mode)
    report = CrossCheckReport(mode, packing is not None, violation is None, violation)
    if report.solver_feasible != report.condition_ok:
        report.problems.append(
            f"solver says {'feasible' if packing else 'infeasible'}, condition says "
            f"{'ok' if violation is None else violation.to_doc()}"
        )
    if packing is not None:
        report.solver_weight = packing.weight(weights)
        report.problems += validate_packing(H, M, packing, mode)
    if optimality:
        brute = exhaustive_min_packing(H, M, weights, mode)
        report.exhaustive_weight = None if brute is None else brute[0]
        if (brute is None) != (packing is None):
            report.problems.append("brute force disagrees on feasibility")
        elif brute is not None and brute[0] != report.solver_weight:
            report.problems.append(f"solver weight {report.solver_weight} != optimum {brute[0]}")
    return report
