import itertools

import pytest
from hypothesis import given, settings

from islandkit.decomposition import (
    Linkage,
    PathDecomposition,
    TreeDecomposition,
    find_linkage,
    parse_decomposition,
    restore_properness,
    treewidth_decomposition,
    validate_decomposition,
    write_decomposition,
)
from islandkit.graphs import (
    Graph,
    Separation,
    gen_complete_bipartite,
    gen_cycle,
    gen_fan,
    gen_path,
    gen_triangulated_grid,
    vset,
)

from conftest import graphs, random_graph


def menger_bruteforce(G: Graph, A, B) -> int:
    """Minimum size of a vertex set whose removal disconnects A from B
    (vertices of A/B removable too); equals the max number of disjoint
    A-B paths."""
    A, B = set(A), set(B)

    def connected_after(removed: set) -> bool:
        live_A = A - removed
        live_B = B - removed
        if live_A & live_B:
            return True
        seen = set(live_A)
        stack = list(live_A)
        while stack:
            v = stack.pop()
            if v in live_B:
                return True
            for u in G.adj[v]:
                if u not in removed and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return False

    for k in range(G.n + 1):
        for S in itertools.combinations(range(G.n), k):
            if not connected_after(set(S)):
                return k
    return G.n


class TestPathDecomposition:
    def test_properties(self):
        P = PathDecomposition(((0, 1), (1, 2), (2, 3)))
        assert P.order == 3
        assert P.width == 1
        assert P.adhesion == 1
        assert P.proper

    def test_validate_path_graph(self):
        G = gen_path(4)
        P = PathDecomposition(((0, 1), (1, 2), (2, 3)))
        assert validate_decomposition(G, P).ok

    def test_uncovered_edge_rejected(self):
        G = gen_cycle(4)
        P = PathDecomposition(((0, 1), (1, 2), (2, 3)))
        verdict = validate_decomposition(G, P)
        assert not verdict.ok

    def test_broken_trace_rejected(self):
        G = gen_path(4)
        P = PathDecomposition(((0, 1), (1, 2), (0, 2, 3)))
        assert not validate_decomposition(G, P).ok

    def test_roundtrip(self):
        P = PathDecomposition(((0, 1), (1, 2)))
        Q = parse_decomposition(write_decomposition(P))
        assert isinstance(Q, PathDecomposition)
        assert Q.bags == P.bags

    def test_tree_roundtrip(self):
        T = TreeDecomposition(((0, 1), (1, 2), (1, 3)), ((0, 1), (1, 2)))
        U = parse_decomposition(write_decomposition(T))
        assert isinstance(U, TreeDecomposition)
        assert U.bags == T.bags and U.edges == T.edges

    def test_restore_properness(self):
        P = PathDecomposition(((0, 1), (0, 1, 2), (2, 3)))
        Q, witness = restore_properness(P)
        assert Q.proper
        assert validate_decomposition(gen_path(4), Q).ok


class TestTreewidth:
    def test_path_width_one(self):
        T = treewidth_decomposition(gen_path(8))
        assert validate_decomposition(gen_path(8), T).ok
        assert T.width == 1

    def test_cycle_width_two(self):
        T = treewidth_decomposition(gen_cycle(7))
        assert validate_decomposition(gen_cycle(7), T).ok
        assert T.width == 2

    def test_fan_width_two(self):
        G = gen_fan(1, 10)
        T = treewidth_decomposition(G)
        assert validate_decomposition(G, T).ok
        assert T.width == 2

    @given(graphs(max_n=8, min_n=1))
    @settings(max_examples=40, deadline=None)
    def test_always_valid(self, G):
        T = treewidth_decomposition(G)
        assert validate_decomposition(G, T).ok


class TestLinkage:
    def test_disjoint_paths_on_ladder(self):
        # two parallel paths
        G = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (1, 4)])
        res = find_linkage(G, (0, 3), (2, 5))
        assert isinstance(res, Linkage)
        assert len(res.paths) == 2

    def test_star_bottleneck_returns_separation(self):
        G = Graph(5, [(0, 4), (1, 4), (2, 4), (3, 4)])
        res = find_linkage(G, (0, 1), (2, 3))
        assert isinstance(res, Separation)
        assert res.order == 1
        assert res.cut == (4,)

    def test_shared_vertex_is_its_own_path(self):
        G = Graph(3, [(0, 1), (1, 2), (0, 2)])
        res = find_linkage(G, (0, 1), (1, 2))
        assert isinstance(res, Linkage)
        assert (1,) in res.paths

    def test_shared_vertex_bottleneck(self):
        res = find_linkage(gen_path(3), (0, 1), (1, 2))
        assert isinstance(res, Separation)
        assert res.order == 1

    def test_matches_menger_bruteforce(self, rng):
        for _ in range(25):
            G = random_graph(rng, 8, 0.35)
            A = vset(rng.sample(range(8), 2))
            B = vset(rng.sample(range(8), 2))
            res = find_linkage(G, A, B)
            menger = menger_bruteforce(G, A, B)
            if isinstance(res, Linkage):
                assert menger >= len(A)
                seen = set()
                for path in res.paths:
                    assert not seen & set(path)
                    seen.update(path)
            else:
                assert res.order == menger < len(A)
