"""Seeded random instances, rooted by construction."""
from __future__ import annotations

import random
from itertools import combinations
from dataclasses import dataclass

from .documents import Instance
from .errors import InputError
from .hypercore import Dyperedge, Hyperedge, MixedHypergraph, Weights
from .matroid import ExplicitMatroid, FreeMatroid, Matroid, PartitionMatroid, UniformMatroid


@dataclass(frozen=True)
class GenParams:
    vertices: int = 3
    roots: int = 2
    dyperedges: int = 4
    hyperedges: int = 0
    matroid: str = "free"
    max_tail: int = 2
    weight_range: tuple = (0, 0)
    root_arc_share: float = 0.4

    def __post_init__(self):
        if min(self.vertices, self.roots, self.dyperedges, self.hyperedges) < 0:
            raise InputError("sizes must be non-negative")
        if self.max_tail < 1:
            raise InputError("max_tail must be at least 1")
        if self.weight_range[0] > self.weight_range[1]:
            raise InputError("empty weight range")
        if self.hyperedges and self.vertices < 2:
            raise InputError("hyperedges need at least two vertices")
        if self.dyperedges and (self.vertices == 0 or (self.roots == 0 and self.vertices < 2)):
            raise InputError("not enough nodes for a dyperedge")


def parse_matroid_option(text: str, roots) -> Matroid:
    """free | uniform:k | partition:a,b/c;1,1 | explicit:a,b/a,c"""
    ground = tuple(sorted(roots))
    kind, _, rest = text.partition(":")
    try:
        if kind == "free":
            return FreeMatroid(ground)
        if kind == "uniform":
            return UniformMatroid(ground, int(rest))
        if kind == "partition":
            blocks, _, caps = rest.partition(";")
            return PartitionMatroid(
                ground, tuple(tuple(b.split(",")) for b in blocks.split("/")), tuple(int(c) for c in caps.split(","))
            )
        if kind == "explicit":
            return ExplicitMatroid(ground, tuple(frozenset(b.split(",")) if b else frozenset() for b in rest.split("/")))
    except ValueError as exc:
        raise InputError(f"bad matroid option {text!r}: {exc}") from None
    raise InputError(f"unknown matroid family {kind!r}")


def random_matroid(rng: random.Random, roots, family: str) -> Matroid:
    ground = tuple(sorted(roots))
    if family == "random":
        family = rng.choice(["free", "uniform", "partition", "explicit"])
    if family == "free":
        return FreeMatroid(ground)
    if family == "uniform":
        return UniformMatroid(ground, rng.randint(0, len(ground)))
    if family == "partition":
        labels = [rng.randrange(max(1, len(ground))) for _ in ground]
        blocks = [tuple(r for r, l in zip(ground, labels) if l == i) for i in sorted(set(labels))]
        return PartitionMatroid(ground, tuple(blocks), tuple(rng.randint(0, len(b)) for b in blocks))
    if family == "explicit":
        # random k-subsets, pruned until basis exchange holds
        k = rng.randint(0, len(ground))
        subsets = [frozenset(c) for c in combinations(ground, k)]
        kept = [s for s in subsets if rng.random() < 0.7] or subsets[:1]
        return repair_bases(ground, kept)
    return parse_matroid_option(family, roots)


def repair_bases(ground, candidates) -> Matroid:
    """Close a candidate basis list under the exchange axiom by pruning."""
    bases = set(candidates)
    changed = True
    while changed:
        changed = False
        for B1 in sorted(bases, key=sorted):
            for B2 in sorted(bases, key=sorted):
                for x in sorted(B1 - B2):
                    if not any((B1 - {x}) | {y} in bases for y in B2 - B1):
                        bases.discard(B2)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    if not bases:
        bases = {frozenset(sorted(candidates, key=sorted)[0])}
    return ExplicitMatroid(ground, tuple(bases))


def generate(seed: int, params: GenParams = GenParams(), rng: random.Random | None = None) -> Instance:
    rng = rng or random.Random(seed)
    V = [f"v{i}" for i in range(params.vertices)]
    R = [f"r{i}" for i in range(params.roots)]
    dyperedges = []
    for i in range(params.dyperedges):
        from_root = R and (rng.random() < params.root_arc_share or len(V) < 2)
        head = rng.choice(V)
        if from_root:
            tail = {rng.choice(R)}
        else:
            others = [v for v in V if v != head]
            tail = set(rng.sample(others, rng.randint(1, min(params.max_tail, len(others)))))
        dyperedges.append(Dyperedge(f"a{i}", frozenset(tail), head))
    hyperedges = []
    for i in range(params.hyperedges):
        size = rng.randint(2, min(3, len(V)))
        hyperedges.append(Hyperedge(f"e{i}", frozenset(rng.sample(V, size))))
    H = MixedHypergraph(frozenset(V), frozenset(R), tuple(dyperedges), tuple(hyperedges))
    lo, hi = params.weight_range
    weights = Weights({x: rng.randint(lo, hi) for x in sorted(H.elements)}) if (lo, hi) != (0, 0) else Weights()
    return Instance(H, random_matroid(rng, R, params.matroid), weights)
