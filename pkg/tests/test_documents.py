import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hyperpack.documents import (
    Instance, Solution, dump_instance, dump_solution, load_instance, load_solution, parse_instance,
)
from hyperpack.engine import solve
from hyperpack.errors import InputError
from hyperpack.generate import GenParams, generate, parse_matroid_option
from hyperpack.hypercore import Weights, check_rooted
from hyperpack.matroid import ExplicitMatroid, PartitionMatroid, UniformMatroid
from hyperpack.verify import Mode

from helpers import E2, rooted_instances


def test_instance_round_trip_with_fractions():
    inst = Instance(E2, UniformMatroid(("r1", "r2"), 1), Weights({"a": "-3/4", "b": 2}))
    text = dump_instance(inst)
    again = load_instance(text)
    assert again == inst
    assert dump_instance(again) == text
    assert json.loads(text)["weights"] == {"a": "-3/4", "b": 2}


@given(rooted_instances(max_roots=3, max_elements=6, weights=True))
@settings(max_examples=50)
def test_round_trip_is_byte_exact(inst):
    H, M, w = inst
    text = dump_instance(Instance(H, M, w))
    assert dump_instance(load_instance(text)) == text
    P = solve(H, M, w, "matroid-reachability")
    sol = Solution("optimal", Mode.MATROID_REACHABILITY, P, P.weight(w)) if P else Solution("infeasible", Mode.MATROID_REACHABILITY)
    stext = dump_solution(sol)
    assert dump_solution(load_solution(stext)) == stext
    assert load_solution(stext) == sol


@pytest.mark.parametrize("doc, message", [
    ({"vertices": ["u"], "roots": ["r"], "weights": {"zz": 1}}, "unknown element"),
    ({"vertices": ["u"], "roots": ["r"], "dyperedges": [{"id": "a", "tail": ["r"], "head": "u"}], "weights": {"a": 0.5}}, "weight"),
    ({"vertices": ["u"], "roots": ["r"], "dyperedges": [{"id": "a", "head": "u"}]}, "tail"),
    ({"vertices": ["u"], "roots": ["r"], "matroid": {"type": "magic"}}, "unknown type"),
    ({"vertices": "u"}, "list of strings"),
])
def test_malformed_instances(doc, message):
    with pytest.raises(InputError, match=message):
        parse_instance(doc)


def test_bad_json():
    with pytest.raises(InputError, match="line 1"):
        load_instance("{nope")


def test_all_matroid_kinds_survive():
    for M in (
        PartitionMatroid(("r1", "r2"), (("r1",), ("r2",)), (1, 0)),
        ExplicitMatroid(("r1", "r2"), ({"r1"}, {"r2"})),
    ):
        inst = Instance(E2, M, Weights())
        assert load_instance(dump_instance(inst)).matroid == M


class TestGenerator:
    def test_same_seed_same_bytes(self):
        p = GenParams(vertices=4, roots=2, dyperedges=6, hyperedges=2, weight_range=(-3, 3))
        assert dump_instance(generate(1, p)) == dump_instance(generate(1, p))

    @given(st.integers(0, 10**6), st.integers(1, 5), st.integers(0, 3), st.integers(0, 8), st.integers(0, 3))
    def test_always_rooted(self, seed, nv, nr, nd, nh):
        try:
            p = GenParams(vertices=nv, roots=nr, dyperedges=nd, hyperedges=nh, matroid="random")
        except InputError:
            return
        assert check_rooted(generate(seed, p).hypergraph).rooted

    def test_no_hyperedges_gives_a_digraph(self):
        inst = generate(5, GenParams(vertices=4, roots=2, dyperedges=6, hyperedges=0, max_tail=1))
        assert inst.hypergraph.is_digraph

    def test_matroid_specs(self):
        R = ["r0", "r1", "r2"]
        assert parse_matroid_option("uniform:2", R).rank(R) == 2
        assert parse_matroid_option("partition:r0,r1/r2;1,1", R).rank(R) == 2
        assert parse_matroid_option("explicit:r0/r1", R).rank(R) == 1
        for bad in ("uniform:x", "nope", "partition:r0;1,2"):
            with pytest.raises(InputError):
                parse_matroid_option(bad, R)

    def test_invalid_params(self):
        with pytest.raises(InputError):
            GenParams(vertices=1, hyperedges=1)
        with pytest.raises(InputError):
            GenParams(weight_range=(2, 1))
