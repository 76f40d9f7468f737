"""Matching enumeration, counting, the pigeonhole injection, and symmetric
differences, cross-checked against brute-force oracles."""

import math

import pytest

from conftest import brute_matchings, random_graph
from matchswitch import (EnumerationBudgetExceeded, Matching,
                         NoAugmentingEdgeError, complete_bipartite,
                         complete_graph, count_perfect, cycle_graph,
                         enumerate_matchings, gen_cycle_union,
                         near_perfect_injection, permanent_count,
                         symdiff_decompose)
from matchswitch.graphs import Graph, degree_report


def double_factorial(n):
    return math.prod(range(n, 0, -2))


def test_enumeration_counts():
    assert len(enumerate_matchings(complete_graph(4), 2)) == 3
    assert len(enumerate_matchings(complete_graph(6), 3)) == 15
    assert len(enumerate_matchings(cycle_graph(6), 3)) == 2


def test_enumeration_double_factorial():
    for n in (2, 4, 6, 8, 10):
        assert len(enumerate_matchings(complete_graph(n), n // 2)) == \
            double_factorial(n - 1)


def test_enumeration_matches_brute_oracle():
    for seed in range(12):
        G = random_graph(7, 0.5, seed)
        for size in range(0, 4):
            got = [m.edges for m in enumerate_matchings(G, size)]
            assert got == brute_matchings(G, size)


def test_enumeration_canonical_order():
    ms = enumerate_matchings(complete_graph(6), 3)
    assert [m.edges for m in ms] == sorted(m.edges for m in ms)
    assert ms[0].edges == ((0, 1), (2, 3), (4, 5))


def test_enumeration_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_matchings(complete_graph(8), 4, budget=10)


def test_matching_validation():
    G = cycle_graph(6)
    with pytest.raises(ValueError):
        Matching(G, [(0, 2)])  # non-edge
    with pytest.raises(ValueError):
        Matching(G, [(0, 1), (1, 2)])  # shared vertex
    M = Matching(G, [(1, 0)])
    assert M.edges == ((0, 1),)


def test_count_perfect():
    assert count_perfect(complete_bipartite(3, 3)) == 6
    assert count_perfect(gen_cycle_union(2, 2)) == 4
    assert count_perfect(complete_graph(8)) == 105


def test_permanent_agrees_with_enumeration():
    for seed in range(50):
        half = 3 + seed % 5  # up to n_half = 7
        rng_p = 0.3 + (seed % 7) / 10
        import random
        rng = random.Random(seed)
        edges = [(u, half + w) for u in range(half) for w in range(half)
                 if rng.random() < rng_p]
        G = Graph(2 * half, edges,
                  bipartition=(list(range(half)), list(range(half, 2 * half))))
        assert permanent_count(G) == len(enumerate_matchings(G, half))
        assert count_perfect(G) == permanent_count(G)


def test_count_perfect_dp_agrees_with_enumeration():
    for seed in range(20):
        G = random_graph(8, 0.55, 100 + seed)
        assert count_perfect(G) == len(enumerate_matchings(G, 4))


def test_injection_adjacent_case():
    G = complete_graph(6)
    pair, M = near_perfect_injection(G, Matching(G, [(0, 1), (2, 3)]))
    assert pair == (4, 5)
    assert M.edges == ((0, 1), (2, 3), (4, 5))


def test_injection_adjacent_case_cycle():
    G = cycle_graph(6)
    pair, M = near_perfect_injection(G, Matching(G, [(1, 2), (3, 4)]))
    assert pair == (0, 5)
    assert M.edges == ((0, 5), (1, 2), (3, 4))


def test_injection_pigeonhole_case():
    # unmatched vertices non-adjacent: an edge of N must be rerouted
    G = cycle_graph(6)
    pair, M = near_perfect_injection(G, Matching(G, [(1, 2), (4, 5)]))
    assert pair == (0, 3)
    assert M.is_perfect
    assert len(set(M.edges) & {(1, 2), (4, 5)}) == 1


def _hypothesis_holds(G):
    n = G.n
    if G.bipartition is not None:
        rep = degree_report(G)
        return rep.ore_bip >= G.n_half
    return degree_report(G).ore_general >= n - 1


def test_injection_injective_k33_minus_matching():
    full = complete_bipartite(3, 3)
    edges = [e for e in full.edges if e not in ((0, 3), (1, 4), (2, 5))]
    G = Graph(6, edges, bipartition=([0, 1, 2], [3, 4, 5]))
    assert _hypothesis_holds(G)
    nears = enumerate_matchings(G, 2)
    images = set()
    for N in nears:
        pair, M = near_perfect_injection(G, N)
        assert M.is_perfect
        images.add((pair, M.edges))
    assert len(images) == len(nears)


def test_injection_bound_small_graphs():
    # near-perfect count <= n^2 * perfect count on qualifying graphs
    checked = 0
    for seed in range(30):
        n = (6, 8)[seed % 2]
        G = random_graph(n, 0.75, 300 + seed)
        if not _hypothesis_holds(G):
            continue
        perfect = enumerate_matchings(G, n // 2)
        nears = enumerate_matchings(G, n // 2 - 1)
        assert len(nears) <= n * n * len(perfect)
        images = set()
        for N in nears:
            pair, M = near_perfect_injection(G, N)
            images.add((pair, M.edges))
        assert len(images) == len(nears)
        checked += 1
    assert checked >= 8


def test_injection_bipartite_qualifying():
    # bipartite hypothesis: non-adjacent cross pairs sum to at least n_half
    import random
    checked = 0
    for seed in range(40):
        half = 4
        rng = random.Random(1400 + seed)
        edges = [(u, half + w) for u in range(half) for w in range(half)
                 if rng.random() < 0.8]
        G = Graph(2 * half, edges,
                  bipartition=(list(range(half)), list(range(half, 2 * half))))
        rep = degree_report(G)
        if rep.ore_bip is None or rep.ore_bip < half:
            continue
        perfect = enumerate_matchings(G, half)
        nears = enumerate_matchings(G, half - 1)
        assert len(nears) <= (2 * half) ** 2 * len(perfect)
        images = set()
        for N in nears:
            pair, M = near_perfect_injection(G, N)
            images.add((pair, M.edges))
        assert len(images) == len(nears)
        checked += 1
    assert checked >= 10


def test_injection_no_edge_raises():
    # unmatched 2 and 3 are non-adjacent and the lone edge cannot reroute
    G = Graph(4, [(0, 1)])
    with pytest.raises(NoAugmentingEdgeError):
        near_perfect_injection(G, Matching(G, [(0, 1)]))


def test_symdiff_identity():
    G = complete_graph(6)
    M = enumerate_matchings(G, 3)[0]
    dec = symdiff_decompose(M, M)
    assert dec.hamming == 0 and not dec.cycles and not dec.paths


def test_symdiff_four_cycle():
    G = complete_graph(4)
    dec = symdiff_decompose(Matching(G, [(0, 1), (2, 3)]),
                            Matching(G, [(0, 2), (1, 3)]))
    assert dec.hamming == 4
    assert len(dec.cycles) == 1 and len(dec.cycles[0]) == 4
    assert not dec.paths


def test_symdiff_six_cycle():
    G = complete_graph(6)
    dec = symdiff_decompose(Matching(G, [(0, 1), (2, 3), (4, 5)]),
                            Matching(G, [(0, 2), (1, 4), (3, 5)]))
    assert dec.hamming == 6
    assert len(dec.cycles) == 1 and len(dec.cycles[0]) == 6
    assert dec.cycles[0][0] == 0 and dec.cycles[0][1] == 1  # rooted, M1 first


def test_symdiff_properties_random():
    for seed in range(25):
        G = random_graph(10, 0.6, 500 + seed)
        ms = enumerate_matchings(G, 3)
        if len(ms) < 2:
            continue
        M1, M2 = ms[seed % len(ms)], ms[(seed * 7 + 1) % len(ms)]
        dec = symdiff_decompose(M1, M2)
        assert dec.hamming == M1.hamming(M2)
        edge_total = sum(len(c) for c in dec.cycles) + \
            sum(len(p) - 1 for p in dec.paths)
        assert edge_total == dec.hamming
        for cyc in dec.cycles:
            assert len(cyc) % 2 == 0 and len(cyc) >= 4
        # strict alternation around each cycle
        p1 = M1.partners()
        p2 = M2.partners()
        for cyc in dec.cycles:
            for i in range(len(cyc)):
                a, b = cyc[i], cyc[(i + 1) % len(cyc)]
                assert (p1[a] == b) != (p2[a] == b)
