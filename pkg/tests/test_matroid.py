import pytest
from hypothesis import given, strategies as st

from hyperpack.errors import InputError
from hyperpack.hypercore import Dyperedge, MixedHypergraph
from hyperpack.matroid import (
    CachedRank, ExplicitMatroid, FreeMatroid, PartitionMatroid, UniformMatroid,
    direct_sum, entering_matroid, parallel_copies, restriction,
)

from helpers import matroids, powerset


def assert_rank_laws(M):
    subsets = list(powerset(M.ground))
    for X in subsets:
        r = M.rank(X)
        assert 0 <= r <= len(X)
        for y in M.ground:
            assert M.rank(X | {y}) - r in (0, 1)
    for X in subsets:
        for Y in subsets:
            assert M.rank(X) + M.rank(Y) >= M.rank(X | Y) + M.rank(X & Y)


def roots_sets(max_size=5):
    return st.integers(1, max_size).map(lambda n: [f"r{i}" for i in range(n)])


class TestConcrete:
    def test_free(self):
        M = FreeMatroid(("r1", "r2"))
        assert M.rank({"r1", "r2"}) == 2 and M.is_independent({"r1", "r2"})
        assert M.span({"r1"}) == {"r1"}

    def test_uniform(self):
        M = UniformMatroid(("r1", "r2"), 1)
        assert M.rank({"r1", "r2"}) == 1 and not M.is_independent({"r1", "r2"})
        assert M.span({"r1"}) == {"r1", "r2"}
        assert M.is_basis_of({"r1"}, {"r1", "r2"})

    def test_explicit(self):
        M = ExplicitMatroid(("r1", "r2"), ({"r1"}, {"r2"}))
        assert M.rank({"r1"}) == 1 and M.is_independent({"r1"})

    def test_span_of_empty_is_loops(self):
        M = PartitionMatroid(("a", "b", "c"), (("a", "b"), ("c",)), (1, 0))
        assert M.span(set()) == {"c"}
        assert M.is_basis_of(set(), {"c"})

    def test_errors(self):
        M = FreeMatroid(("a",))
        with pytest.raises(InputError):
            M.rank({"z"})
        with pytest.raises(InputError):
            M.is_basis_of({"a"}, set())
        with pytest.raises(InputError):
            UniformMatroid(("a",), -1)
        with pytest.raises(InputError):
            PartitionMatroid(("a", "b"), (("a",), ("a", "b")), (1, 1))
        with pytest.raises(InputError):
            ExplicitMatroid(("a", "b"), ({"a"}, {"a", "b"}))

    @given(roots_sets(5).flatmap(matroids))
    def test_laws(self, M):
        assert_rank_laws(M)

    @given(roots_sets(4).flatmap(lambda g: matroids(g).map(lambda M: M)))
    def test_independence_matches_bases(self, M):
        bases = [B for B in powerset(M.ground) if M.is_independent(B) and len(B) == M.rank(M.ground)]
        for X in powerset(M.ground):
            assert M.is_independent(X) == any(X <= B for B in bases)


class TestCompositions:
    def test_restriction_examples(self):
        M = restriction(UniformMatroid(("a", "b", "c"), 2), ["a"])
        assert M.ground == ("a",) and M.rank({"a"}) == 1
        E = ExplicitMatroid(("a", "b", "c"), ({"a", "b"}, {"a", "c"}))
        R = restriction(E, ["b", "c"])
        assert R.rank({"b", "c"}) == 1
        with pytest.raises(InputError):
            restriction(E, ["z"])

    def test_parallel_copies_examples(self):
        M, orig = parallel_copies(FreeMatroid(("r",)), {"r": 2})
        assert M.rank(M.ground) == 1 and set(orig.values()) == {"r"}
        U, _ = parallel_copies(UniformMatroid(("r1", "r2"), 1), {"r1": 2})
        assert U.rank(U.ground) == 1 and len(U.ground) == 3
        Z, orig = parallel_copies(FreeMatroid(("r1", "r2")), {"r1": 0})
        assert Z.ground == ("r2",)

    def test_entering_matroid(self):
        D = MixedHypergraph({"v", "w"}, {"r"}, [Dyperedge(f"a{i}", {"r"}, "v") for i in range(3)] + [Dyperedge("b", {"v"}, "w")])
        M = entering_matroid(D, 2)
        assert M.rank({"a0", "a1", "a2"}) == 2 and M.rank(M.ground) == 3
        assert not entering_matroid(D, 1).is_independent({"a0", "a1"})
        assert entering_matroid(D, 1).is_independent({"a0", "b"})

    def test_entering_matroid_rejects_root_heads(self):
        D = MixedHypergraph({"v"}, {"r"}, [Dyperedge("a", {"v"}, "r")])
        with pytest.raises(InputError):
            entering_matroid(D, 1)

    @given(roots_sets(3).flatmap(matroids), roots_sets(2).flatmap(matroids), st.data())
    def test_compositions_keep_laws(self, M1, M2, data):
        copies = {x: data.draw(st.integers(0, 2)) for x in M1.ground}
        P, orig = parallel_copies(M1, copies, naming=lambda x, i: f"{x}#{i}")
        assert_rank_laws(P)
        for X in powerset(P.ground):
            assert P.rank(X) == M1.rank({orig[x] for x in X})
        renamed, _ = parallel_copies(M2, {}, naming=lambda x, i: f"s{x}")
        S = direct_sum([P, renamed])
        assert_rank_laws(S)
        keep = data.draw(st.sets(st.sampled_from(M1.ground)))
        assert_rank_laws(restriction(M1, sorted(keep)))
        C = CachedRank(M1)
        assert all(C.rank(X) == M1.rank(X) for X in powerset(M1.ground))
