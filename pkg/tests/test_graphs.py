import itertools

import pytest
from hypothesis import given, settings

from islandkit.graphs import (
    Graph,
    GraphParseError,
    GraphValidityError,
    MinorModel,
    Separation,
    gen_complete_bipartite,
    gen_cycle,
    gen_fan,
    gen_hex_grid,
    gen_outerplanar_gadget,
    gen_path,
    gen_triangulated_grid,
    girth,
    parse_graph,
    verify_minor_model,
    write_graph,
)

from conftest import graphs


class TestParsing:
    def test_header_detected(self):
        G = parse_graph("3 2\n0 1\n1 2\n")
        assert (G.n, G.m) == (3, 2)

    def test_headerless_edge_list(self):
        G = parse_graph("0 1\n1 2\n")
        assert (G.n, G.m) == (3, 2)

    def test_comments_and_blank_lines_skipped(self):
        G = parse_graph("# c\n\n0 1\n")
        assert (G.n, G.m) == (2, 1)

    def test_loop_rejected(self):
        with pytest.raises((GraphParseError, GraphValidityError)):
            parse_graph("0 0\n")

    def test_duplicate_edge_rejected(self):
        with pytest.raises((GraphParseError, GraphValidityError)):
            parse_graph("0 1\n1 0\n")

    @given(graphs(max_n=8))
    @settings(max_examples=60, deadline=None)
    def test_write_parse_roundtrip(self, G):
        H = parse_graph(write_graph(G))
        assert H.n == G.n and H.adj == G.adj


class TestGenerators:
    def test_fan_counts(self):
        G = gen_fan(1, 3)
        assert (G.n, G.m) == (4, 5)

    def test_complete_bipartite_counts(self):
        G = gen_complete_bipartite(2, 3)
        assert (G.n, G.m) == (5, 6)

    def test_triangulated_grid_counts(self):
        G = gen_triangulated_grid(10, 10)
        # 2*10*10 axis edges + 81 diagonals... computed directly:
        r = c = 10
        expected = r * (c - 1) + c * (r - 1) + (r - 1) * (c - 1)
        assert (G.n, G.m) == (100, expected)

    def test_hex_grid_girth_and_degree(self):
        G = gen_hex_grid(3, 4)
        assert girth(G) == 6
        assert max(G.degree(v) for v in G.vertices()) <= 3

    def test_outerplanar_gadget_counts(self):
        for C in (1, 2, 3):
            G = gen_outerplanar_gadget(C)
            assert G.n == 3 * (C + 1)
            assert G.m == 3 * C + 3 * (C + 1)

    @given(graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_girth_matches_exhaustive_cycle_search(self, G):
        best = None
        for k in range(3, G.n + 1):
            for cyc in itertools.permutations(range(G.n), k):
                if cyc[0] != min(cyc):
                    continue
                if all(
                    G.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)
                ):
                    best = k
                    break
            if best:
                break
        assert girth(G) == best

    def test_cycle_and_path(self):
        assert gen_cycle(5).m == 5
        assert gen_path(5).m == 4
        assert girth(gen_path(9)) is None


class TestSeparation:
    def test_cut_and_order(self):
        G = gen_path(3)
        sep = Separation((0, 1), (1, 2))
        assert sep.cut == (1,)
        assert sep.order == 1
        sep.validate(G)

    def test_crossing_edge_rejected(self):
        G = gen_path(3)
        with pytest.raises(GraphValidityError):
            Separation((0, 1), (1, 2)).validate(Graph(3, [(0, 1), (1, 2), (0, 2)]))


class TestMinorModel:
    def test_triangle_minor_of_c6(self):
        G = gen_cycle(6)
        model = MinorModel({0: (0, 1), 1: (2, 3), 2: (4, 5)})
        assert verify_minor_model(G, gen_cycle(3), model).ok

    def test_disconnected_branch_set_rejected(self):
        G = gen_cycle(6)
        model = MinorModel({0: (0, 3), 1: (1, 2), 2: (4, 5)})
        verdict = verify_minor_model(G, gen_cycle(3), model)
        assert not verdict.ok and "connected" in verdict.violation

    def test_missing_edge_rejected(self):
        G = gen_path(4)
        model = MinorModel({0: (0,), 1: (1,), 2: (3,)})
        verdict = verify_minor_model(G, gen_cycle(3), model)
        assert not verdict.ok

    def test_overlapping_branch_sets_rejected(self):
        G = gen_cycle(6)
        model = MinorModel({0: (0, 1), 1: (1, 2), 2: (4, 5)})
        assert not verify_minor_model(G, gen_cycle(3), model).ok
