import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from islandkit.graphs import (
    gen_complete_bipartite,
    gen_fan,
    gen_path,
    gen_triangulated_grid,
)
from islandkit.islands import (
    DensityPreconditionError,
    GraphTooLarge,
    NotAnEnclave,
    SparseIslandParams,
    density_below,
    disjoint_islands,
    enclave_certificate,
    find_island_sparse,
    incident_edge_count,
    is_enclave,
    is_island,
    min_island_size_bruteforce,
    shrink_enclave_to_island,
)
from islandkit.separators import default_shatterer

from conftest import graphs, random_graph


class TestIsIsland:
    def test_whole_graph_is_always_an_island(self):
        G = gen_path(5)
        assert is_island(G, range(5), 1).ok

    def test_witness_on_failure(self):
        G = gen_complete_bipartite(2, 3)
        verdict = is_island(G, [2], 2)
        assert not verdict.ok
        assert verdict.witness == 2
        assert verdict.witness_outside_degree == 2

    def test_certificate_records_outside_degrees(self):
        G = gen_path(4)
        cert = is_island(G, [1, 2], 2).certificate
        assert cert.outside_degrees == (1, 1)

    @given(graphs(max_n=8))
    @settings(max_examples=50, deadline=None)
    def test_island_definition_pointwise(self, G):
        S = [v for v in G.vertices() if v % 2 == 0]
        verdict = is_island(G, S, 2)
        expected = all(
            sum(1 for u in G.adj[v] if u not in set(S)) < 2 for v in S
        )
        assert verdict.ok == expected


class TestEnclaves:
    def test_edge_count(self):
        G = gen_path(4)
        assert incident_edge_count(G, [1, 2]) == 3

    def test_enclave_shrinks_to_island(self):
        G = gen_complete_bipartite(2, 3)
        assert is_enclave(G, range(5), 2)
        cert = shrink_enclave_to_island(G, range(5), 2)
        assert is_island(G, cert.members, 2).ok

    def test_not_an_enclave_raises(self):
        G = gen_complete_bipartite(3, 3)
        with pytest.raises(NotAnEnclave):
            shrink_enclave_to_island(G, [0, 3], 1)

    @given(graphs(max_n=8, min_n=2))
    @settings(max_examples=60, deadline=None)
    def test_shrink_yields_island_subset(self, G):
        t = 2
        A = tuple(G.vertices())
        cert_e = enclave_certificate(G, A, t) if is_enclave(G, A, t) else None
        if cert_e is None:
            return
        cert = shrink_enclave_to_island(G, A, t)
        assert set(cert.members) <= set(A)
        assert cert.members  # enclaves never shrink to nothing
        assert is_island(G, cert.members, t).ok


class TestBruteForce:
    def test_k23_min_2_island(self):
        size, witness = min_island_size_bruteforce(gen_complete_bipartite(2, 3), 2)
        assert size == 3
        assert is_island(gen_complete_bipartite(2, 3), witness, 2).ok

    def test_t_above_max_degree(self):
        size, witness = min_island_size_bruteforce(gen_complete_bipartite(2, 3), 9)
        assert size == 1 and witness == (0,)

    def test_cap_enforced(self):
        with pytest.raises(GraphTooLarge):
            min_island_size_bruteforce(gen_path(30), 2, cap=20)


class TestSparsePipeline:
    def test_density_precondition(self):
        assert density_below(gen_triangulated_grid(8, 8), 4, Fraction(3, 10))
        assert not density_below(gen_complete_bipartite(5, 5), 2, Fraction(1, 4))

    def test_dense_input_rejected(self):
        params = SparseIslandParams(t=2, alpha=0.25)
        with pytest.raises(DensityPreconditionError):
            find_island_sparse(gen_complete_bipartite(5, 5), params, default_shatterer)

    def test_grid_island_certified(self):
        G = gen_triangulated_grid(12, 12)
        params = SparseIslandParams(t=4, alpha=0.3)
        cert = find_island_sparse(G, params, default_shatterer)
        assert is_island(G, cert.members, 4).ok
        assert params.C is not None
        assert len(cert.members) <= params.C

    def test_disjoint_islands_report(self):
        G = gen_triangulated_grid(20, 20)
        params = SparseIslandParams(t=4, alpha=0.3)
        report = disjoint_islands(G, params, default_shatterer)
        seen = set()
        for cert in report.islands:
            assert is_island(G, cert.members, 4).ok
            assert not seen & set(cert.members)
            seen.update(cert.members)
        assert len(report.islands) >= report.required
        assert report.required == math.ceil(report.delta * G.n)

    def test_delta_formula(self):
        params = SparseIslandParams(t=4, alpha=0.3)
        assert params.epsilon == Fraction(3, 80)
        assert params.delta(100) == Fraction(3, 80) / 100

    def test_random_sparse_graphs_yield_verified_islands(self, rng):
        for _ in range(10):
            G = random_graph(rng, 40, 0.05)
            params = SparseIslandParams(t=3, alpha=0.5)
            if not density_below(G, 3, params.alpha):
                continue
            cert = find_island_sparse(G, params, default_shatterer)
            assert is_island(G, cert.members, 3).ok
