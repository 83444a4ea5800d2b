from hypothesis import given

from hyperpack.reach import backward_reachable, forward_reachable, sink_component, strongly_connected_components

from helpers import E2, digraph, mixed, rooted_instances


def reach_matrix(H):
    """Transitive closure by repeated relaxation."""
    succ = {v: {v} for v in H.nodes}
    for a in H.dyperedges:
        for t in a.tail:
            succ[t].add(a.head)
    for e in H.hyperedges:
        for u in e.members:
            succ[u] |= e.members
    changed = True
    while changed:
        changed = False
        for v in succ:
            new = set().union(*(succ[w] for w in succ[v]))
            if new - succ[v]:
                succ[v] |= new
                changed = True
    return succ


def test_forward_and_backward_on_example():
    assert forward_reachable(E2, {"r1"}) == {"r1", "u", "v"}
    assert backward_reachable(E2, {"v"}) == {"r1", "r2", "u", "v"}
    assert backward_reachable(E2, {"u"}) == {"r1", "u"}


def test_any_tail_vertex_suffices():
    H = mixed({"u", "v", "w"}, {"r"}, [("a", {"r"}, "u"), ("b", {"u", "w"}, "v")])
    assert "v" in forward_reachable(H, {"r"})


def test_hyperedges_connect_both_ways():
    H = mixed({"u", "v"}, {"r"}, hyperedges=[("e", {"u", "v"})])
    assert forward_reachable(H, {"v"}) == {"u", "v"}


def test_sink_component_prefers_smallest_member():
    H = digraph({"u", "v", "w"}, {"r"}, [("a", "r", "u"), ("b", "u", "v"), ("c", "u", "w")])
    assert sink_component(H) == {"v"}


def test_sink_component_of_cycle():
    H = digraph({"u", "v"}, {"r"}, [("a", "r", "u"), ("b", "u", "v"), ("c", "v", "u")])
    assert sink_component(H) == {"u", "v"}


@given(rooted_instances(max_vertices=4, max_elements=7))
def test_components_match_mutual_reachability(inst):
    H = inst[0]
    succ = reach_matrix(H)
    comps = strongly_connected_components(H)
    assert sorted(v for c in comps for v in c) == sorted(H.nodes)
    for c in comps:
        for u in c:
            assert c == {v for v in H.nodes if v in succ[u] and u in succ[v]}
    for v in H.nodes:
        assert forward_reachable(H, {v}) == succ[v]
        assert backward_reachable(H, {v}) == {u for u in H.nodes if v in succ[u]}


@given(rooted_instances(max_vertices=4, max_elements=7))
def test_sink_component_has_nothing_leaving(inst):
    H = inst[0]
    C = sink_component(H)
    assert C and C <= H.vertices
    assert all(forward_reachable(H, {v}) == C for v in C)
