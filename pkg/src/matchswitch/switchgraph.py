"""The k-switch graph H_k(G, gamma) over enumerated matchings, its component
structure, frozen edges, and the threshold property evaluators.

Adjacency follows the metric definition: two distinct matchings are adjacent
when their Hamming distance is at most 2k, regardless of how many alternating
cycles make up the difference. The all-pairs scan packs matchings into edge
bitmask rows and popcounts xors with numpy; union-find merges run in a fixed
index order so component ids are reproducible.

Size convention for gamma-matchings: a general n-vertex graph uses
gamma*n/2 edges (gamma*n matched vertices); a balanced bipartite graph on
2*n_half vertices uses gamma*n_half edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DivisibilityViolation
from .graphs import (Graph, as_fraction, degree_report, gen_cycle_union,
                     gen_F, gen_F_bip, gen_G_family, gen_G_family_bip,
                     gen_random_min_degree)
from .matchings import DEFAULT_ENUMERATION_BUDGET, Matching, enumerate_matchings


def matching_size_for_gamma(G: Graph, gamma) -> int:
    gamma = as_fraction(gamma)
    if G.bipartition is not None:
        size = gamma * G.n_half
    else:
        size = gamma * G.n / 2
    if size.denominator != 1:
        raise DivisibilityViolation(f"gamma={gamma} gives non-integral size {size}")
    return int(size)


def _pack_masks(masks: list[int], words: int) -> np.ndarray:
    arr = np.zeros((len(masks), words), dtype=np.uint64)
    for i, m in enumerate(masks):
        for w in range(words):
            arr[i, w] = (m >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return arr


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


class SwitchGraph:
    """H_k(G, gamma): vertices are the canonical matchings of the target size,
    adjacency is Hamming distance in (0, 2k]."""

    def __init__(self, graph: Graph, k: int, gamma, matchings: list[Matching]):
        self.graph = graph
        self.k = k
        self.gamma = as_fraction(gamma)
        self.matchings = matchings
        self._scan()

    def _scan(self):
        N = len(self.matchings)
        self.degree_positive = [False] * N
        dsu = _DSU(N)
        limit = 2 * self.k
        if 0 < N <= 128:
            masks = [m.edge_mask for m in self.matchings]
            for i in range(N - 1):
                mi = masks[i]
                for j in range(i + 1, N):
                    if (mi ^ masks[j]).bit_count() <= limit:
                        self.degree_positive[i] = True
                        self.degree_positive[j] = True
                        dsu.union(i, j)
        elif N:
            words = max(1, (len(self.graph.edges) + 63) // 64)
            arr = _pack_masks([m.edge_mask for m in self.matchings], words)
            for i in range(N - 1):
                diff = np.bitwise_count(arr[i + 1:] ^ arr[i]).sum(axis=1, dtype=np.int64)
                close = np.nonzero(diff <= limit)[0]
                if close.size:
                    self.degree_positive[i] = True
                    for off in close:
                        j = i + 1 + int(off)
                        self.degree_positive[j] = True
                        dsu.union(i, j)
        comp_of = [dsu.find(i) for i in range(N)]
        relabel = {}
        self.comp_of = []
        for r in comp_of:
            if r not in relabel:
                relabel[r] = len(relabel)
            self.comp_of.append(relabel[r])
        self.num_components = len(relabel)
        self.component_members = [[] for _ in range(self.num_components)]
        for i, c in enumerate(self.comp_of):
            self.component_members[c].append(i)

    @property
    def size(self) -> int:
        return len(self.matchings)

    def component_sizes(self) -> list[int]:
        return [len(c) for c in self.component_members]

    def isolated_count(self) -> int:
        return sum(1 for d in self.degree_positive if not d)

    def adjacent(self, i: int, j: int) -> bool:
        d = self.matchings[i].hamming(self.matchings[j])
        return 0 < d <= 2 * self.k


def build_switch_graph(G: Graph, k: int, gamma=1,
                       budget: int = DEFAULT_ENUMERATION_BUDGET) -> SwitchGraph:
    size = matching_size_for_gamma(G, gamma)
    return SwitchGraph(G, k, gamma, enumerate_matchings(G, size, budget=budget))


def frozen_edges(H: SwitchGraph, component_id: int) -> tuple[tuple[int, int], ...]:
    """Edges contained in every matching of the component."""
    members = H.component_members[component_id]
    inter = -1
    for i in members:
        inter &= H.matchings[i].edge_mask
    edges = H.graph.edges
    return tuple(edges[b] for b in range(len(edges)) if inter >> b & 1)


def edge_count_spectrum(H: SwitchGraph, edge_set) -> list[set[int]]:
    """Per component, the set of values |M intersect edge_set| over members.

    Used to check frozen-layer invariants: the spectrum is a singleton per
    component exactly when the count is invariant under k-switches there.
    """
    mask = 0
    for e in edge_set:
        mask |= 1 << H.graph.edge_index[(min(e), max(e))]
    out = []
    for members in H.component_members:
        out.append({(H.matchings[i].edge_mask & mask).bit_count() for i in members})
    return out


@dataclass
class PropertyReport:
    connected: bool
    num_components: int
    component_sizes: list[int]
    max_fraction: float
    isolated: int
    frozen_counts: list[int]
    min_nonfrozen: Optional[int]
    matching_size: int
    omega: int
    properties: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "num_components": self.num_components,
            "component_sizes": self.component_sizes,
            "isolated": self.isolated,
            "frozen_counts": self.frozen_counts,
            "max_fraction": self.max_fraction,
            "omega": self.omega,
            "matching_size": self.matching_size,
            "properties": self.properties,
        }


def components(H: SwitchGraph) -> PropertyReport:
    """Exact component decomposition and frozen-edge counts of H."""
    sizes = H.component_sizes()
    s = H.matchings[0].size if H.matchings else 0
    frozen_counts = [len(frozen_edges(H, c)) for c in range(H.num_components)]
    nonfrozen = [s - f for f in frozen_counts]
    return PropertyReport(
        connected=H.num_components <= 1,
        num_components=H.num_components,
        component_sizes=sizes,
        max_fraction=(max(sizes) / H.size) if sizes else 0.0,
        isolated=H.isolated_count(),
        frozen_counts=frozen_counts,
        min_nonfrozen=min(nonfrozen) if nonfrozen else None,
        matching_size=s,
        omega=H.size,
    )


def evaluate_thresholds(G: Graph, k: int, gamma=1, c=2,
                        budget: int = DEFAULT_ENUMERATION_BUDGET) -> PropertyReport:
    """Booleans for connect, giant(c), noiso, thaw(c), cluster(c).

    Every property holds on the empty switch graph by convention. ``c`` is an
    explicit real parameter (rationals are compared exactly); no asymptotic
    claim is made.
    """
    H = build_switch_graph(G, k, gamma, budget=budget)
    rep = components(H)
    c = as_fraction(c)
    if c < 1:
        raise ValueError("c must be at least 1")
    if H.size == 0:
        rep.properties = {p: True for p in ("connect", "giant", "noiso", "thaw", "cluster")}
        return rep
    s = rep.matching_size
    rep.properties = {
        "connect": rep.connected,
        "giant": max(rep.component_sizes) * c >= H.size,
        "noiso": rep.isolated == 0,
        "thaw": all((s - f) * c >= s for f in rep.frozen_counts),
        "cluster": rep.num_components < c ** G.n,
    }
    return rep


# ---------------------------------------------------------------------------
# threshold scanning
# ---------------------------------------------------------------------------

EXHAUSTIVE_N_LIMIT = 6
EXHAUSTIVE_NHALF_LIMIT = 4


def _family_pool(n: int, k: int, gamma, bipartite: bool):
    """Deterministic pool of counterexample-family graphs on n vertices."""
    pool = []
    gamma = as_fraction(gamma)

    def try_add(fn, *args):
        try:
            pool.append(fn(*args))
        except (DivisibilityViolation, ValueError):
            pass

    if bipartite:
        half = n // 2
        try_add(gen_F_bip, k, half)
        for p in (1, 2):
            try_add(gen_G_family_bip, k, p, gamma, half)
    else:
        try_add(gen_F, k, n)
        for p in (1, 2):
            try_add(gen_G_family, k, p, gamma, n)
        L = 2 * k + 2
        if n % L == 0:
            try_add(gen_cycle_union, k, n // L)
    return pool


def _violates(G, k, gamma, prop, c, budget):
    H = build_switch_graph(G, k, gamma, budget=budget)
    if H.size == 0:
        return False
    c = as_fraction(c)
    if prop == "connect":
        return H.num_components > 1
    if prop == "noiso":
        return H.isolated_count() > 0
    if prop == "giant":
        return max(H.component_sizes()) * c < H.size
    if prop == "cluster":
        return H.num_components >= c ** G.n
    s = H.matchings[0].size
    for comp in range(H.num_components):
        if (s - len(frozen_edges(H, comp))) * c < s:
            return True
    return False


def _scan_delta_task(task):
    """Probe one minimum-degree floor; pure per-delta so sweeps can fan out
    over a process pool without changing results."""
    (n, k, gamma, prop, c, delta, seed, trials, bipartite, budget,
     pool_json) = task
    for doc in pool_json:
        G = Graph.from_json(doc)
        if degree_report(G).min_degree >= delta and \
                _violates(G, k, gamma, prop, c, budget):
            return delta, G.to_json()
    for t in range(trials):
        G = gen_random_min_degree(n, delta, bipartite=bipartite,
                                  seed=seed * 100003 + delta * 131 + t)
        if _violates(G, k, gamma, prop, c, budget):
            return delta, G.to_json()
    return delta, None


def scan_threshold(n: int, k: int, gamma=1, prop: str = "connect",
                   mode: str = "exhaustive", seed: int = 0, trials: int = 50,
                   c=2, bipartite: bool = False,
                   budget: int = DEFAULT_ENUMERATION_BUDGET,
                   workers: int = 1) -> list[dict]:
    """Probe, per minimum-degree floor delta, for a property-violating witness.

    Exhaustive mode enumerates every graph (n <= 6 general, n_half <= 4
    bipartite: the documented feasibility wall). Random mode draws seeded
    random graphs per delta and mixes in the known counterexample families;
    deltas are independent tasks, so `workers` > 1 fans them out over a
    process pool with byte-identical results. Returns one row per delta with
    the witness graph when found.
    """
    if prop not in ("connect", "giant", "noiso", "thaw", "cluster"):
        raise ValueError(f"unknown property {prop!r}")
    max_delta = (n // 2 if bipartite else n - 1)
    best: dict[int, Graph] = {}

    if mode == "exhaustive":
        if bipartite:
            half = n // 2
            if half > EXHAUSTIVE_NHALF_LIMIT:
                raise ValueError(f"exhaustive bipartite scan capped at n_half={EXHAUSTIVE_NHALF_LIMIT}")
            pairs = [(u, half + w) for u in range(half) for w in range(half)]
            bip = (list(range(half)), list(range(half, n)))
        else:
            if n > EXHAUSTIVE_N_LIMIT:
                raise ValueError(f"exhaustive scan capped at n={EXHAUSTIVE_N_LIMIT}")
            pairs = list(itertools.combinations(range(n), 2))
            bip = None
        for mask in range(1 << len(pairs)):
            edges = [pairs[b] for b in range(len(pairs)) if mask >> b & 1]
            G = Graph(n, edges, bipartition=bip)
            d = degree_report(G).min_degree
            if d in best:
                continue
            if _violates(G, k, gamma, prop, c, budget):
                for delta in range(d + 1):
                    best.setdefault(delta, G)
    elif mode == "random":
        pool_json = [g.to_json() for g in _family_pool(n, k, gamma, bipartite)
                     if g.n == n]
        tasks = [(n, k, as_fraction(gamma), prop, as_fraction(c), delta, seed,
                  trials, bipartite, budget, pool_json)
                 for delta in range(max_delta + 1)]
        if workers > 1:
            from concurrent.futures import ProcessPoolExecutor
            with ProcessPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(_scan_delta_task, tasks))
        else:
            results = [_scan_delta_task(t) for t in tasks]
        for delta, doc in results:
            if doc is not None:
                best[delta] = Graph.from_json(doc)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    rows = []
    for delta in range(max_delta + 1):
        G = best.get(delta)
        rows.append({"n": n, "k": k, "gamma": str(as_fraction(gamma)),
                     "delta": delta, "property": prop,
                     "witness_found": G is not None,
                     "witness": G})
    return rows
