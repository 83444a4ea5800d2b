"""Rooted mixed hypergraphs: dyperedges, hyperedges, bisets and the counting
functions shared by the solvers and the condition checkers.

Vertices and roots are strings living in disjoint namespaces.  Every
dyperedge and hyperedge carries a unique id so that parallel elements stay
distinguishable.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InputError


@dataclass(frozen=True)
class Dyperedge:
    id: str
    tail: frozenset
    head: str

    def __post_init__(self):
        object.__setattr__(self, "tail", frozenset(self.tail))
        if not self.tail:
            raise InputError(f"dyperedge {self.id!r} has an empty tail")
        if self.head in self.tail:
            raise InputError(f"dyperedge {self.id!r} has its head in its tail")

    @property
    def endpoints(self) -> frozenset:
        return self.tail | {self.head}


@dataclass(frozen=True)
class Hyperedge:
    id: str
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if len(self.members) < 2:
            raise InputError(f"hyperedge {self.id!r} needs at least two members")

    @property
    def endpoints(self) -> frozenset:
        return self.members


@dataclass(frozen=True)
class Arc:
    """A trimmed element: ``id`` names the dyperedge or hyperedge it came from."""

    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Biset:
    outer: frozenset
    inner: frozenset

    def __post_init__(self):
        object.__setattr__(self, "outer", frozenset(self.outer))
        object.__setattr__(self, "inner", frozenset(self.inner))
        if not self.inner <= self.outer:
            raise InputError("biset inner set must be contained in its outer set")

    @property
    def wall(self) -> frozenset:
        return self.outer - self.inner


def check_biset_subpartition(bisets: Sequence[Biset], ground: Iterable[str]) -> None:
    """Raise InputError unless ``bisets`` is a biset subpartition of ``ground``."""
    ground = frozenset(ground)
    seen: set = set()
    for b in bisets:
        if not b.inner:
            raise InputError("biset subpartition has an empty inner set")
        if not b.inner <= ground:
            raise InputError("inner set leaves the ground set")
        if b.inner & seen:
            raise InputError("inner sets overlap")
        if b.wall & ground:
            raise InputError("wall meets the ground set")
        seen |= b.inner


@dataclass(frozen=True)
class MixedHypergraph:
    vertices: frozenset
    roots: frozenset
    dyperedges: tuple = ()
    hyperedges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "roots", frozenset(self.roots))
        object.__setattr__(self, "dyperedges", tuple(self.dyperedges))
        object.__setattr__(self, "hyperedges", tuple(self.hyperedges))
        if self.vertices & self.roots:
            clash = sorted(self.vertices & self.roots)
            raise InputError(f"ids used both as vertex and root: {clash}")
        everything = self.vertices | self.roots
        seen: set = set()
        for x in self.dyperedges + self.hyperedges:
            if x.id in seen:
                raise InputError(f"duplicate element id {x.id!r}")
            seen.add(x.id)
            stray = x.endpoints - everything
            if stray:
                raise InputError(f"element {x.id!r} touches unknown ids {sorted(stray)}")

    @cached_property
    def nodes(self) -> frozenset:
        return self.vertices | self.roots

    @cached_property
    def elements(self) -> dict:
        return {x.id: x for x in self.dyperedges + self.hyperedges}

    def element(self, eid: str):
        try:
            return self.elements[eid]
        except KeyError:
            raise InputError(f"unknown element id {eid!r}") from None

    def is_dyperedge(self, eid: str) -> bool:
        return isinstance(self.element(eid), Dyperedge)

    @property
    def is_digraph(self) -> bool:
        return not self.hyperedges and all(len(a.tail) == 1 for a in self.dyperedges)

    def _check_nodes(self, X) -> frozenset:
        X = frozenset(X)
        stray = X - self.nodes
        if stray:
            raise InputError(f"unknown vertex ids {sorted(stray)}")
        return X


# -- counting -----------------------------------------------------------------

def entering_dyperedges(H: MixedHypergraph, X: Iterable[str]) -> list:
    """Dyperedges with head in X and some tail vertex outside X, by id."""
    X = H._check_nodes(X)
    return [a for a in H.dyperedges if a.head in X and a.tail - X]


def leaving_dyperedges(H: MixedHypergraph, X: Iterable[str]) -> list:
    X = H._check_nodes(X)
    return entering_dyperedges(H, H.nodes - X)


def crossing_hyperedges(H: MixedHypergraph, X: Iterable[str]) -> list:
    X = H._check_nodes(X)
    return [e for e in H.hyperedges if e.members & X and e.members - X]


def in_neighbours(H: MixedHypergraph, X: Iterable[str]) -> frozenset:
    """Union of tail(a) - X over the dyperedges a entering X."""
    X = frozenset(X)
    out: set = set()
    for a in entering_dyperedges(H, X):
        out |= a.tail - X
    return frozenset(out)


def out_neighbours(H: MixedHypergraph, X: Iterable[str]) -> frozenset:
    return frozenset(a.head for a in leaving_dyperedges(H, X))


def enters_biset(a: Dyperedge, X: Biset) -> bool:
    return bool(a.tail - X.outer) and a.head in X.inner


def biset_in_degree(H: MixedHypergraph, X: Biset) -> int:
    return sum(1 for a in H.dyperedges if enters_biset(a, X))


def hyperedges_entering_subpartition(hyperedges: Iterable[Hyperedge], parts: Sequence[Iterable[str]]) -> int:
    """Number of hyperedges entering at least one part (each counted once)."""
    parts = [frozenset(p) for p in parts]
    seen: set = set()
    for p in parts:
        if p & seen:
            raise InputError("parts of a subpartition must be disjoint")
        seen |= p
    return sum(1 for e in hyperedges if any(e.members & p and e.members - p for p in parts))


def incident_vertices(H: MixedHypergraph, ids: Iterable[str]) -> frozenset:
    """Non-root vertices touched by the given elements."""
    out: set = set()
    for eid in ids:
        out |= H.element(eid).endpoints
    return frozenset(out) & H.vertices


def incident_roots(H: MixedHypergraph, ids: Iterable[str]) -> frozenset:
    """Roots touched by the given dyperedges; hyperedges contribute none."""
    out: set = set()
    for eid in ids:
        x = H.element(eid)
        if isinstance(x, Dyperedge):
            out |= x.endpoints
    return frozenset(out) & H.roots


# -- constructions ------------------------------------------------------------

def trim(H: MixedHypergraph, choices: Mapping[str, object]) -> list:
    """Turn each chosen element into an arc.

    A dyperedge takes a tail vertex, a hyperedge takes an ordered pair.
    """
    arcs = []
    for eid, choice in choices.items():
        x = H.element(eid)
        if isinstance(x, Dyperedge):
            if isinstance(choice, (tuple, list)):
                if len(choice) != 2 or choice[1] != x.head:
                    raise InputError(f"bad trimming {choice!r} for dyperedge {eid!r}")
                choice = choice[0]
            if choice not in x.tail:
                raise InputError(f"{choice!r} is not in the tail of {eid!r}")
            arcs.append(Arc(eid, choice, x.head))
        else:
            u, v = choice
            if u == v or u not in x.members or v not in x.members:
                raise InputError(f"bad trimming {choice!r} for hyperedge {eid!r}")
            arcs.append(Arc(eid, u, v))
    return arcs


class FreshIds:
    """Hands out ids that avoid a reserved set."""

    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)

    def __call__(self, base: str) -> str:
        name, i = base, 1
        while name in self.taken:
            i += 1
            name = f"{base}~{i}"
        self.taken.add(name)
        return name


def all_ids(H: MixedHypergraph) -> set:
    return set(H.nodes) | set(H.elements)


def directed_extension(H: MixedHypergraph) -> tuple:
    """Replace each hyperedge by its bundle of |e| orientations.

    Returns the dypergraph and a map from each bundle member id to the id of
    the hyperedge it orients.
    """
    fresh = FreshIds(all_ids(H))
    bundle = {}
    arcs = list(H.dyperedges)
    for e in H.hyperedges:
        for v in sorted(e.members):
            bid = fresh(f"{e.id}>{v}")
            bundle[bid] = e.id
            arcs.append(Dyperedge(bid, e.members - {v}, v))
    return MixedHypergraph(H.vertices, H.roots, arcs, ()), bundle


def induced(H: MixedHypergraph, X: Iterable[str]) -> MixedHypergraph:
    X = H._check_nodes(X)
    return MixedHypergraph(
        H.vertices & X,
        H.roots & X,
        [a for a in H.dyperedges if a.endpoints <= X],
        [e for e in H.hyperedges if e.members <= X],
    )


def remove(H: MixedHypergraph, C: Iterable[str]) -> MixedHypergraph:
    C = H._check_nodes(C)
    if C & H.roots:
        raise InputError("roots cannot be removed")
    return induced(H, H.nodes - C)


class Rootedness(enum.Enum):
    SIMPLY_ROOTED = "simply_rooted"
    ROOTED = "rooted"
    NOT_ROOTED = "not_rooted"


@dataclass(frozen=True)
class RootCheck:
    status: Rootedness
    root: str | None = None
    element: str | None = None

    @property
    def rooted(self) -> bool:
        return self.status is not Rootedness.NOT_ROOTED

    @property
    def simply_rooted(self) -> bool:
        return self.status is Rootedness.SIMPLY_ROOTED


def check_rooted(H: MixedHypergraph) -> RootCheck:
    simple = True
    for r in sorted(H.roots):
        for e in H.hyperedges:
            if r in e.members:
                return RootCheck(Rootedness.NOT_ROOTED, r, e.id)
        leaving = 0
        for a in H.dyperedges:
            if a.head == r:
                return RootCheck(Rootedness.NOT_ROOTED, r, a.id)
            if r in a.tail:
                if a.tail != {r}:
                    return RootCheck(Rootedness.NOT_ROOTED, r, a.id)
                leaving += 1
        if leaving > 1:
            simple = False
    return RootCheck(Rootedness.SIMPLY_ROOTED if simple else Rootedness.ROOTED)


def require_rooted(H: MixedHypergraph) -> None:
    rc = check_rooted(H)
    if not rc.rooted:
        raise InputError(f"root {rc.root!r} is violated by element {rc.element!r}")


# -- weights ------------------------------------------------------------------

def as_rational(value) -> Fraction:
    if isinstance(value, float):
        raise InputError("weights must be exact; got a float")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"not a rational weight: {value!r}") from None


@dataclass(frozen=True)
class Weights:
    """Exact element weights; ids without an entry weigh zero."""

    values: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", {k: as_rational(v) for k, v in dict(self.values).items()})

    def __getitem__(self, eid: str) -> Fraction:
        return self.values.get(eid, Fraction(0))

    def total(self, ids: Iterable[str]) -> Fraction:
        return sum((self[i] for i in set(ids)), Fraction(0))


def weights_of(w) -> Weights:
    if w is None:
        return Weights()
    if isinstance(w, Weights):
        return w
    return Weights(w)


# -- packings -----------------------------------------------------------------

@dataclass(frozen=True)
class Packing:
    """One trimmed hyperarborescence per root.

    ``arcs[r]`` lists the trimmed arcs of root r; the arc ids are the element
    ids of the hyperarborescence and each arc records the trimming choice.
    """

    arcs: Mapping

    def __post_init__(self):
        object.__setattr__(
            self, "arcs", {r: tuple(sorted(a, key=lambda x: x.id)) for r, a in sorted(dict(self.arcs).items())}
        )

    @property
    def roots(self) -> tuple:
        return tuple(self.arcs)

    def elements(self, r: str) -> frozenset:
        return frozenset(a.id for a in self.arcs[r])

    def vertices(self, r: str) -> frozenset:
        return frozenset(a.head for a in self.arcs[r]) | {r}

    def all_elements(self) -> list:
        return [a.id for arcs in self.arcs.values() for a in arcs]

    def covering(self, v: str) -> frozenset:
        return frozenset(r for r, arcs in self.arcs.items() if any(a.head == v for a in arcs))

    def weight(self, w) -> Fraction:
        return weights_of(w).total(self.all_elements())


def singleton_packing(roots: Iterable[str]) -> Packing:
    return Packing({r: () for r in roots})
