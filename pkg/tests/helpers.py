from itertools import combinations

from hypothesis import strategies as st

from hyperpack.generate import repair_bases
from hyperpack.hypercore import Dyperedge, Hyperedge, MixedHypergraph, Weights
from hyperpack.matroid import ExplicitMatroid, FreeMatroid, Matroid, PartitionMatroid, UniformMatroid


def digraph(vertices, roots, arcs):
    """Build from (id, tail, head) triples with single-vertex tails."""
    return MixedHypergraph(set(vertices), set(roots), [Dyperedge(i, {t}, h) for i, t, h in arcs])


def mixed(vertices, roots, dyperedges=(), hyperedges=()):
    return MixedHypergraph(
        set(vertices), set(roots),
        [Dyperedge(i, set(t), h) for i, t, h in dyperedges],
        [Hyperedge(i, set(m)) for i, m in hyperedges],
    )


# pass/fail lines collected by the acceptance suite
ACCEPTANCE: list = []

E2 = digraph({"u", "v"}, {"r1", "r2"}, [("a", "r1", "u"), ("b", "u", "v"), ("c", "r2", "v")])


class GraphicMatroid(Matroid):
    """Edges of a multigraph; independent iff acyclic."""

    def __init__(self, edges):
        self.edges = dict(edges)
        self.ground = tuple(sorted(self.edges))

    def _rank(self, X):
        parent = {}

        def find(v):
            while parent.setdefault(v, v) != v:
                v = parent[v]
            return v

        r = 0
        for x in X:
            a, b = map(find, self.edges[x])
            if a != b:
                parent[a] = b
                r += 1
        return r


def powerset(items):
    items = list(items)
    for n in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, n))


def is_matroid_bases(ground, bases):
    bases = set(bases)
    return all(
        any((B1 - {x}) | {y} in bases for y in B2 - B1)
        for B1 in bases for B2 in bases for x in B1 - B2
    )


@st.composite
def matroids(draw, roots):
    ground = tuple(sorted(roots))
    kind = draw(st.sampled_from(["free", "uniform", "partition", "explicit"]))
    if kind == "free":
        return FreeMatroid(ground)
    if kind == "uniform":
        return UniformMatroid(ground, draw(st.integers(0, len(ground))))
    if kind == "partition":
        labels = [draw(st.integers(0, 2)) for _ in ground]
        blocks = [tuple(r for r, l in zip(ground, labels) if l == i) for i in sorted(set(labels))]
        caps = [draw(st.integers(0, len(b))) for b in blocks]
        return PartitionMatroid(ground, tuple(blocks), tuple(caps))
    k = draw(st.integers(0, len(ground)))
    all_k = [frozenset(c) for c in combinations(ground, k)]
    chosen = draw(st.lists(st.sampled_from(all_k), min_size=1, unique=True))
    return repair_bases(ground, chosen)


@st.composite
def rooted_instances(draw, max_vertices=3, max_roots=2, max_elements=5, hyperedges=True, weights=False, digraph_only=False):
    nv = draw(st.integers(1, max_vertices))
    nr = draw(st.integers(1, max_roots))
    V = [f"v{i}" for i in range(nv)]
    R = [f"r{i}" for i in range(nr)]
    n = draw(st.integers(0, max_elements))
    dys, hys = [], []
    for i in range(n):
        use_hyper = hyperedges and not digraph_only and nv >= 2 and draw(st.booleans())
        if use_hyper:
            members = draw(st.sets(st.sampled_from(V), min_size=2, max_size=min(3, nv)))
            hys.append(Hyperedge(f"e{i}", members))
            continue
        head = draw(st.sampled_from(V))
        others = [v for v in V if v != head]
        if not others or draw(st.booleans()):
            tail = {draw(st.sampled_from(R))}
        elif digraph_only:
            tail = {draw(st.sampled_from(others))}
        else:
            tail = draw(st.sets(st.sampled_from(others), min_size=1, max_size=min(2, len(others))))
        dys.append(Dyperedge(f"a{i}", tail, head))
    H = MixedHypergraph(set(V), set(R), dys, hys)
    M = draw(matroids(R))
    w = Weights({x: draw(st.integers(-5, 5)) for x in sorted(H.elements)}) if weights else Weights()
    return H, M, w
