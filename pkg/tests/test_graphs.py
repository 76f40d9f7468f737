"""Graph construction, degree/Ore reports, and family generators."""

import math

import pytest

from matchswitch import (DivisibilityViolation, Graph, InfeasibleDegreeError,
                         NonCrossingEdgeError, OreBipOnNonBipartiteError,
                         SelfLoopError, UnbalancedBipartitionError,
                         build_graph, complete_bipartite, complete_graph,
                         cycle_graph, degree_report, gen_cycle_union, gen_F,
                         gen_F_bip, gen_G_family, gen_G_family_bip,
                         gen_random_min_degree, ore_bip_minimum)
from matchswitch.graphs import f_invariant_edges


def test_build_graph_basic():
    G = build_graph(4, [(0, 1), (2, 3)])
    assert len(G.edges) == 2
    assert G.has_edge(1, 0) and not G.has_edge(0, 2)


def test_build_graph_dedup():
    G = build_graph(4, [(0, 1), (1, 0), (2, 3)])
    assert len(G.edges) == 2


def test_build_graph_errors():
    with pytest.raises(SelfLoopError):
        build_graph(3, [(1, 1)])
    with pytest.raises(NonCrossingEdgeError):
        build_graph(4, [(0, 1)], bipartition=([0, 1], [2, 3]))
    with pytest.raises(UnbalancedBipartitionError):
        build_graph(4, [], bipartition=([0], [1, 2, 3]))
    with pytest.raises(ValueError):
        build_graph(3, [(0, 5)])


def test_edges_canonically_sorted():
    G = build_graph(5, [(4, 0), (3, 1), (2, 0)])
    assert G.edges == ((0, 2), (0, 4), (1, 3))


def test_degree_report_complete():
    rep = degree_report(complete_graph(6))
    assert rep.min_degree == 5
    assert rep.ore_general == math.inf


def test_degree_report_cycle():
    rep = degree_report(cycle_graph(6))
    assert rep.min_degree == 2
    assert rep.ore_general == 4


def test_degree_report_bipartite():
    G = complete_bipartite(3, 3)
    rep = degree_report(G)
    assert rep.ore_bip == math.inf
    with pytest.raises(OreBipOnNonBipartiteError):
        ore_bip_minimum(complete_graph(4))


def test_gen_G_family_shape():
    # layers |X|=6, |Y|=3, |Z|=3; Y complete to X+Z; min degree gn/2 - p(k+1)
    G = gen_G_family(2, 1, 1, 12)
    assert G.n == 12
    assert degree_report(G).min_degree == 3
    for y in range(6, 9):
        assert G.degree(y) == 9
    for z in range(9, 12):
        assert set(G.neighbors[z]) == {6, 7, 8}


def test_gen_G_family_p2():
    G = gen_G_family(2, 2, 1, 16)
    assert G.n == 16
    assert degree_report(G).min_degree == 2
    # X = 12 vertices in two 6-cycles, Y and Z both of size 2
    assert all(G.degree(y) == 14 for y in range(12, 14))


def test_gen_G_family_divisibility():
    with pytest.raises(DivisibilityViolation):
        gen_G_family(2, 3, 1, 12)
    with pytest.raises(DivisibilityViolation):
        gen_G_family(2, 1, "1/3", 10)  # gamma n/2 not integral


def test_gen_G_family_min_degree_formula():
    for k in (2, 3):
        for p in (1, 2):
            for n in range(4 * p * (k + 1), 4 * p * (k + 1) + 9, 2):
                G = gen_G_family(k, p, 1, n)
                assert degree_report(G).min_degree == n // 2 - p * (k + 1)


def test_gen_G_family_bip_shape():
    G = gen_G_family_bip(2, 1, 1, 6)
    assert G.n == 12
    assert degree_report(G).min_degree == (6 - 3) // 2 == 1
    p0, p1 = G.bipartition
    assert len(p0) == len(p1) == 6


def test_gen_G_family_bip_formula():
    G = gen_G_family_bip(3, 1, 1, 8)
    assert degree_report(G).min_degree == (8 - 4) // 2
    with pytest.raises(DivisibilityViolation):
        gen_G_family_bip(2, 2, 1, 4)


def test_gen_F_min_degree():
    assert degree_report(gen_F(2, 12)).min_degree == (2 * 12 - 2) // 3
    assert degree_report(gen_F(3, 16)).min_degree == 16 // 2 - 1
    with pytest.raises(DivisibilityViolation):
        gen_F(2, 13)


def test_gen_F_remainder_degrees():
    # delta(F_{2,n}) = floor((2n-2)/3) also when 3 does not divide n
    for n in (10, 12, 14, 16, 20):
        assert degree_report(gen_F(2, n)).min_degree == (2 * n - 2) // 3
    for n in (12, 16, 20, 24):
        assert degree_report(gen_F(3, n)).min_degree == n // 2 - 1


def test_gen_F_invariant_edge_class():
    G = gen_F(2, 12)
    e1 = f_invariant_edges(G)
    assert len(e1) == 6  # clique on the first 4-vertex layer
    assert all(u < 4 and v < 4 for u, v in e1)


def test_gen_F_bip_regular():
    G = gen_F_bip(2, 6)
    assert G.n == 12
    assert {G.degree(v) for v in range(G.n)} == {4}  # 2n/(k+1)-regular


def test_gen_F_bip_remainder():
    assert degree_report(gen_F_bip(2, 7)).min_degree == (2 * 7) // 3
    for n in (4, 6, 7, 9, 11):
        assert degree_report(gen_F_bip(3, n)).min_degree == n // 2


def test_gen_F_bip_unit_blowup_is_cycle():
    G = gen_F_bip(3, 4)
    assert set(G.edges) == set(cycle_graph(8).edges)


def test_gen_cycle_union():
    assert gen_cycle_union(2, 1).edges == cycle_graph(6).edges
    G = gen_cycle_union(2, 2)
    assert G.n == 12 and len(G.edges) == 12
    assert gen_cycle_union(3, 1).n == 8


def test_generators_deterministic():
    assert gen_F(2, 14).edges == gen_F(2, 14).edges
    assert gen_G_family_bip(2, 1, 1, 6) == gen_G_family_bip(2, 1, 1, 6)
    a = gen_random_min_degree(8, 4, seed=1)
    b = gen_random_min_degree(8, 4, seed=1)
    assert a.edges == b.edges
    assert gen_random_min_degree(8, 4, seed=2).edges != a.edges


def test_random_min_degree():
    assert gen_random_min_degree(6, 5, seed=3) == complete_graph(6)
    G = gen_random_min_degree(8, 4, seed=1)
    assert degree_report(G).min_degree >= 4
    with pytest.raises(InfeasibleDegreeError):
        gen_random_min_degree(4, 4)
    B = gen_random_min_degree(10, 3, bipartite=True, seed=5)
    assert B.bipartition is not None
    assert degree_report(B).min_degree >= 3


def test_json_roundtrip():
    for G in (gen_F_bip(2, 7), gen_G_family(2, 1, 1, 12), complete_graph(5)):
        clone = Graph.from_json(G.to_json())
        assert clone == G
        assert clone.bipartition == G.bipartition
