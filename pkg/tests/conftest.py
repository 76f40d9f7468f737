"""Shared brute-force oracles, kept independent of the library's code paths."""

import itertools
import random

from matchswitch import Graph, gen_random_min_degree


def brute_matchings(G, size):
    """All matchings with `size` edges, by filtering edge subsets."""
    out = []
    for combo in itertools.combinations(G.edges, size):
        seen = set()
        ok = True
        for u, v in combo:
            if u in seen or v in seen:
                ok = False
                break
            seen.add(u)
            seen.add(v)
        if ok:
            out.append(tuple(sorted(combo)))
    return sorted(out)


def brute_hamming(e1, e2):
    return len(set(e1) ^ set(e2))


def bfs_component_count(matchings, k):
    """Connectivity oracle: explicit adjacency lists plus BFS."""
    n = len(matchings)
    edge_sets = [set(m.edges) for m in matchings]
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if 0 < len(edge_sets[i] ^ edge_sets[j]) <= 2 * k:
                adj[i].append(j)
                adj[j].append(i)
    seen = [False] * n
    comps = 0
    for s in range(n):
        if seen[s]:
            continue
        comps += 1
        queue = [s]
        seen[s] = True
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return comps, adj


def random_graph(n, p, seed):
    """Plain G(n, p) with a local RNG."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_graph_min_degree(n, delta, seed):
    return gen_random_min_degree(n, delta, seed=seed)


class ScriptedRng:
    """Feeds predetermined vertex indices and coin values to chain steps."""

    def __init__(self, indices, coins):
        self.indices = list(indices)
        self.coins = list(coins)

    def randrange(self, n):
        return self.indices.pop(0) % n

    def random(self):
        return self.coins.pop(0)
