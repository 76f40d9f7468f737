"""Switch graph construction, components, frozen edges, threshold properties
and the scan harness, cross-checked against a BFS oracle."""

import pytest

from conftest import bfs_component_count, random_graph
from matchswitch import (DivisibilityViolation, Matching, build_switch_graph,
                         complete_graph, components, cycle_graph,
                         edge_count_spectrum, enumerate_matchings,
                         evaluate_thresholds, frozen_edges, gen_cycle_union,
                         gen_F, gen_F_bip, gen_G_family, gen_G_family_bip,
                         matching_size_for_gamma, scan_threshold)
from matchswitch.graphs import Graph, f_invariant_edges


def test_k4_triangle():
    H = build_switch_graph(complete_graph(4), 2, 1)
    assert H.size == 3 and H.num_components == 1
    assert all(H.adjacent(i, j) for i in range(3) for j in range(3) if i != j)


def test_c6_two_isolated():
    H = build_switch_graph(cycle_graph(6), 2, 1)
    assert H.size == 2
    assert H.num_components == 2
    assert H.isolated_count() == 2


def test_c6_k3_connected():
    H = build_switch_graph(cycle_graph(6), 3, 1)
    assert H.num_components == 1
    assert H.isolated_count() == 0


def test_gamma_size_convention():
    assert matching_size_for_gamma(complete_graph(12), "1/2") == 3
    assert matching_size_for_gamma(gen_F_bip(2, 6), 1) == 6
    with pytest.raises(DivisibilityViolation):
        matching_size_for_gamma(complete_graph(10), "1/3")


def test_g_family_components():
    H = build_switch_graph(gen_G_family(2, 1, 1, 12), 2, 1)
    assert H.num_components == 2
    assert H.component_sizes() == [6, 6]
    H = build_switch_graph(gen_G_family(2, 2, 1, 16), 2, 1)
    assert H.num_components == 4
    assert len(set(H.component_sizes())) == 1


def test_k6_single_component_vs_bfs():
    G = complete_graph(6)
    H = build_switch_graph(G, 2, 1)
    assert H.num_components == 1 and H.component_sizes() == [15]
    comps, _ = bfs_component_count(H.matchings, 2)
    assert comps == 1


def test_frozen_edges_g_family():
    G = gen_G_family(2, 1, 1, 12)
    H = build_switch_graph(G, 2, 1)
    x_edges = {e for e in G.edges if e[0] < 6 and e[1] < 6}
    for comp in range(H.num_components):
        fr = frozen_edges(H, comp)
        assert len(fr) == 3  # p(k+1)
        assert set(fr) <= x_edges
        covered = {v for e in fr for v in e}
        assert covered == set(range(6))  # a perfect matching of the X cycle


def test_frozen_edges_k6_empty():
    H = build_switch_graph(complete_graph(6), 2, 1)
    assert frozen_edges(H, 0) == ()


def test_frozen_edges_singleton():
    H = build_switch_graph(cycle_graph(6), 2, 1)
    for comp in range(2):
        assert frozen_edges(H, comp) == H.matchings[H.component_members[comp][0]].edges


def test_shatter_family_grid():
    # 2^p equal components with p(k+1) frozen edges, exactly a matching of X
    # (|Y| >= 2 in every case so the complete-bipartite part is not rigid)
    cases = [(2, 1, 12), (2, 2, 16), (3, 1, 12), (3, 2, 20)]
    for k, p, n in cases:
        G = gen_G_family(k, p, 1, n)
        H = build_switch_graph(G, k, 1)
        assert H.num_components == 2 ** p
        assert len(set(H.component_sizes())) == 1
        xsize = 2 * p * (k + 1)
        x_edges = {e for e in G.edges if e[1] < xsize}
        for comp in range(H.num_components):
            fr = frozen_edges(H, comp)
            assert len(fr) == p * (k + 1)
            assert set(fr) <= x_edges
            assert {v for e in fr for v in e} == set(range(xsize))


def test_bip_family_components():
    H = build_switch_graph(gen_G_family_bip(2, 1, 1, 6), 2, 1)
    assert H.num_components == 2
    assert len(set(H.component_sizes())) == 1


def test_thresholds_f_disconnected():
    rep = evaluate_thresholds(gen_F(2, 12), 2)
    assert rep.properties["connect"] is False
    rep = evaluate_thresholds(gen_F_bip(3, 8), 3)
    assert rep.properties["connect"] is False


def test_cluster_witness_cycle_union():
    G = gen_cycle_union(2, 2)
    rep = evaluate_thresholds(G, 2, 1, c=2)
    assert rep.num_components == 2 ** (G.n // 6) == 4
    assert rep.isolated == 4
    assert rep.properties["noiso"] is False
    assert rep.properties["cluster"] is True  # 4 < 2^12


def test_empty_switch_graph_properties():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])  # no perfect matching
    rep = evaluate_thresholds(star, 2, 1)
    assert rep.omega == 0
    assert all(rep.properties.values())


def test_report_json_fields():
    rep = components(build_switch_graph(cycle_graph(6), 2, 1))
    doc = rep.to_json()
    for key in ("connected", "num_components", "component_sizes", "isolated",
                "frozen_counts", "max_fraction"):
        assert key in doc


def test_adjacency_oracle_equivalence():
    # bitset hamming equals recomputation from sorted edge lists
    for seed in range(10):
        G = random_graph(8, 0.6, 900 + seed)
        ms = enumerate_matchings(G, 3)
        if len(ms) < 2:
            continue
        for i in range(0, len(ms), 7):
            for j in range(1, len(ms), 11):
                d1 = ms[i].hamming(ms[j])
                d2 = len(set(ms[i].edges) ^ set(ms[j].edges))
                assert d1 == d2


def test_monotonicity_in_k():
    # H_j is a subgraph of H_k for j <= k
    for seed in range(6):
        G = random_graph(8, 0.55, 950 + seed)
        H2 = build_switch_graph(G, 2, 1)
        H3 = build_switch_graph(G, 3, 1)
        N = H2.size
        for i in range(N):
            for j in range(i + 1, N):
                if H2.adjacent(i, j):
                    assert H3.adjacent(i, j)


def test_f_bip_invariant_class():
    G = gen_F_bip(2, 6)
    H = build_switch_graph(G, 2, 1)
    for spectrum in edge_count_spectrum(H, f_invariant_edges(G)):
        assert len(spectrum) == 1


def test_scan_exhaustive_n6_k2():
    rows = scan_threshold(6, 2, 1, "connect", mode="exhaustive")
    # C_6 is a disconnected witness with min degree 2
    assert rows[2]["witness_found"]
    w = rows[2]["witness"]
    assert min(w.degree(v) for v in range(w.n)) >= 2
    # no witness at delta = 5 (only K_6 remains and H_2(K_6) is connected)
    assert not rows[5]["witness_found"]


def test_scan_exhaustive_n6_k3():
    rows = scan_threshold(6, 3, 1, "connect", mode="exhaustive")
    assert not rows[5]["witness_found"]
    assert not rows[4]["witness_found"]  # n/2 + 2 = 5 is an upper bound


def test_scan_random_seeds_family_witness():
    rows = scan_threshold(12, 2, 1, "connect", mode="random", trials=2, seed=1)
    assert rows[7]["witness_found"]  # the layered family graph has delta 7
    w = rows[7]["witness"]
    assert min(w.degree(v) for v in range(w.n)) >= 7


def test_scan_rejects_oversize_exhaustive():
    with pytest.raises(ValueError):
        scan_threshold(8, 2, 1, "connect", mode="exhaustive")


def test_gamma_below_one_shatter():
    # the shattering argument covers fixed-size (non-perfect) matchings too
    G = gen_G_family(2, 1, "1/2", 24)
    H = build_switch_graph(G, 2, "1/2")
    assert H.matchings[0].size == 6
    assert H.num_components == 2
    assert len(set(H.component_sizes())) == 1
    for comp in range(2):
        assert len(frozen_edges(H, comp)) == 3


def test_gamma_below_one_shatter_bipartite():
    G = gen_G_family_bip(2, 1, "2/3", 9)
    H = build_switch_graph(G, 2, "2/3")
    assert H.size == 160
    assert H.matchings[0].size == 6
    assert H.num_components == 2
    assert len(set(H.component_sizes())) == 1


def test_scan_workers_identical_results():
    r1 = scan_threshold(8, 2, 1, "connect", mode="random", trials=2, seed=3)
    r2 = scan_threshold(8, 2, 1, "connect", mode="random", trials=2, seed=3,
                        workers=2)
    for a, b in zip(r1, r2):
        assert a["witness_found"] == b["witness_found"]
        if a["witness"] is not None:
            assert a["witness"].edges == b["witness"].edges
