"""Enumeration and counting of matchings, symmetric-difference structure,
and the near-perfect-to-perfect pigeonhole injection.

Matchings are canonically ordered: each edge is written (low, high) and the
edge list is sorted lexicographically. Every list-returning operation uses
that order, so file outputs are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import EnumerationBudgetExceeded, NoAugmentingEdgeError
from .graphs import Graph

DEFAULT_ENUMERATION_BUDGET = 5_000_000


class Matching:
    """A fixed-size matching of a host graph.

    Stores the canonical edge tuple, the bitmask of matched vertices, and a
    bitmask over the host graph's edge indices so Hamming distances are
    single xor/popcount operations.
    """

    __slots__ = ("graph", "edges", "mask", "edge_mask")

    def __init__(self, graph: Graph, edges: Iterable[tuple[int, int]], _trusted=False):
        if _trusted:
            self.edges = tuple(edges)
        else:
            canon = sorted((u, v) if u < v else (v, u) for u, v in edges)
            seen = 0
            for u, v in canon:
                if (u, v) not in graph.edge_index:
                    raise ValueError(f"({u},{v}) is not an edge of the host graph")
                if seen >> u & 1 or seen >> v & 1:
                    raise ValueError(f"edges share vertex in ({u},{v})")
                seen |= (1 << u) | (1 << v)
            self.edges = tuple(canon)
        self.graph = graph
        mask = 0
        emask = 0
        idx = graph.edge_index
        for e in self.edges:
            mask |= (1 << e[0]) | (1 << e[1])
            emask |= 1 << idx[e]
        self.mask = mask
        self.edge_mask = emask

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def is_perfect(self) -> bool:
        return 2 * len(self.edges) == self.graph.n

    def unmatched(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.n) if not self.mask >> v & 1)

    def partners(self) -> list[int]:
        """Partner array; -1 marks an unmatched vertex."""
        p = [-1] * self.graph.n
        for u, v in self.edges:
            p[u] = v
            p[v] = u
        return p

    def hamming(self, other: "Matching") -> int:
        return (self.edge_mask ^ other.edge_mask).bit_count()

    def __eq__(self, other):
        if not isinstance(other, Matching):
            return NotImplemented
        return self.edges == other.edges and \
            (self.graph is other.graph or self.graph == other.graph)

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        return f"Matching({list(self.edges)})"

    def to_json(self) -> dict:
        return {"edges": [list(e) for e in self.edges]}

    @staticmethod
    def from_json(graph: Graph, obj: dict) -> "Matching":
        return Matching(graph, [tuple(e) for e in obj["edges"]])


def _iter_edge_lists(G: Graph, size: int) -> Iterator[tuple]:
    """Yield canonical edge tuples of all matchings with exactly `size` edges.

    Branches on the lowest-index undecided vertex: match it to each admissible
    neighbour in ascending order, or skip it. This emits matchings in
    lexicographic order of their sorted edge lists.
    """
    adj = G.adj
    chosen: list[tuple[int, int]] = []

    def rec(avail: int, remaining: int):
        if remaining == 0:
            yield tuple(chosen)
            return
        if avail.bit_count() < 2 * remaining:
            return
        u = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << u)
        cand = adj[u] & rest
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            chosen.append((u, w))
            yield from rec(rest & ~low, remaining - 1)
            chosen.pop()
        yield from rec(rest, remaining)

    if not 0 <= size <= G.n // 2:
        return
    yield from rec((1 << G.n) - 1, size)


def iter_matchings(G: Graph, size: int,
                   budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[Matching]:
    count = 0
    for edges in _iter_edge_lists(G, size):
        count += 1
        if count > budget:
            raise EnumerationBudgetExceeded(
                f"more than {budget} matchings of size {size}")
        yield Matching(G, edges, _trusted=True)


def enumerate_matchings(G: Graph, size: int,
                        budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[Matching]:
    """All matchings with exactly `size` edges, in canonical order."""
    return list(iter_matchings(G, size, budget=budget))


def count_perfect(G: Graph) -> int:
    """Exact number of perfect matchings.

    Bipartite graphs go through the permanent (inclusion-exclusion over one
    side); general graphs through a subset-DP. Both agree with plain
    enumeration, which the test suite checks as an independent route.
    """
    if G.n % 2 != 0:
        return 0
    if G.bipartition is not None:
        return permanent_count(G)
    return _count_perfect_dp(G)


def _count_perfect_dp(G: Graph) -> int:
    adj = G.adj
    memo = {0: 1}

    def rec(avail: int) -> int:
        val = memo.get(avail)
        if val is not None:
            return val
        low = avail & -avail
        u = low.bit_length() - 1
        rest = avail ^ low
        total = 0
        cand = adj[u] & rest
        while cand:
            wlow = cand & -cand
            cand ^= wlow
            total += rec(rest ^ wlow)
        memo[avail] = total
        return total

    return rec((1 << G.n) - 1)


def permanent_count(G: Graph) -> int:
    """Perfect matchings of a bipartite graph as a 0/1 permanent (Ryser)."""
    if G.bipartition is None:
        raise ValueError("permanent counter needs a bipartite graph")
    part0, part1 = G.bipartition
    h = len(part0)
    col_of = {v: i for i, v in enumerate(part1)}
    rows = []
    for u in part0:
        mask = 0
        for w in G.neighbors[u]:
            mask |= 1 << col_of[w]
        rows.append(mask)

    total = 0
    for s in range(1 << h):
        prod = 1
        for r in rows:
            c = (r & s).bit_count()
            if c == 0:
                prod = 0
                break
            prod *= c
        if prod:
            total += prod if (h - s.bit_count()) % 2 == 0 else -prod
    return total


def near_perfect_injection(G: Graph, N: Matching) -> tuple[tuple[int, int], Matching]:
    """Map a near-perfect matching to (unmatched pair, perfect matching).

    If the two unmatched vertices u,v are adjacent the edge uv is added.
    Otherwise the smallest canonical edge xy of N with x adjacent to u and
    y adjacent to v is rerouted: xy is dropped and xu, yv added. The map is
    injective over all near-perfect matchings of a qualifying graph.
    """
    un = N.unmatched()
    if len(un) != 2:
        raise ValueError("matching is not near-perfect")
    u, v = un
    if G.has_edge(u, v):
        return (u, v), Matching(G, N.edges + ((u, v),))
    for a, b in N.edges:
        for x, y in ((a, b), (b, a)):
            if G.has_edge(x, u) and G.has_edge(y, v):
                edges = [e for e in N.edges if e != (a, b)]
                edges.append((min(x, u), max(x, u)))
                edges.append((min(y, v), max(y, v)))
                return (u, v), Matching(G, edges)
    raise NoAugmentingEdgeError(
        f"no edge xy of N with x~{u}, y~{v}; degree-sum hypothesis violated")


@dataclass(frozen=True)
class SymDiffDecomposition:
    """Alternating cycles and maximal alternating paths of M1 delta M2.

    Cycles are vertex sequences starting at their smallest vertex and moving
    first along the M1 edge; paths run from their smaller endpoint.
    """
    cycles: tuple[tuple[int, ...], ...]
    paths: tuple[tuple[int, ...], ...]
    hamming: int


def symdiff_decompose(M1: Matching, M2: Matching) -> SymDiffDecomposition:
    if M1.graph != M2.graph:
        raise ValueError("matchings live on different graphs")
    n = M1.graph.n
    p1 = M1.partners()
    p2 = M2.partners()

    def delta_nbrs(v):
        out = []
        if p1[v] >= 0 and p1[v] != p2[v]:
            out.append(p1[v])
        if p2[v] >= 0 and p2[v] != p1[v]:
            out.append(p2[v])
        return out

    in_delta = [v for v in range(n) if delta_nbrs(v)]
    seen = set()
    comps = []
    for v in in_delta:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in delta_nbrs(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(comp)

    cycles, paths, total_edges = [], [], 0
    for comp in comps:
        endpoints = sorted(x for x in comp if len(delta_nbrs(x)) == 1)
        if endpoints:
            start = endpoints[0]
            seq = [start]
            prev, cur = None, start
            while True:
                nxt = [y for y in delta_nbrs(cur) if y != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                seq.append(cur)
            paths.append(tuple(seq))
            total_edges += len(seq) - 1
        else:
            start = min(comp)
            seq = [start]
            prev, cur = start, p1[start]
            seq.append(cur)
            while True:
                nxt = [y for y in delta_nbrs(cur) if y != prev][0]
                if nxt == start:
                    break
                prev, cur = cur, nxt
                seq.append(cur)
            cycles.append(tuple(seq))
            total_edges += len(seq)
    return SymDiffDecomposition(tuple(cycles), tuple(paths), total_edges)
