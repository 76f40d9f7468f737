"""Translations between isolated matchings and digraphs with no short
directed cycle, plus the circulant constructions that realize them.

An isolated perfect matching M of G (no k-switch available) corresponds to
an orientation-style digraph: arc x̄ -> w for every non-matching edge xw,
where x̄ is x's partner. Conversely a digraph with no directed cycle of
length <= k turns into a bipartite graph whose diagonal matching is isolated
in the k-switch graph. Directed cycles of length <= k at the diagonal
matching are exactly the available k-switches.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .graphs import Graph
from .matchings import Matching


class Digraph:
    """Directed graph on 0..n-1 without self-loops."""

    __slots__ = ("n", "arcs", "out_masks", "in_masks")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        canon = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            canon.add((u, v))
        self.n = n
        self.arcs = tuple(sorted(canon))
        out_m = [0] * n
        in_m = [0] * n
        for u, v in self.arcs:
            out_m[u] |= 1 << v
            in_m[v] |= 1 << u
        self.out_masks = tuple(out_m)
        self.in_masks = tuple(in_m)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def out_neighbors(self, u: int) -> list[int]:
        return [v for v in range(self.n) if self.out_masks[u] >> v & 1]

    @property
    def oriented(self) -> bool:
        """True when no 2-cycle (u->v and v->u) is present."""
        return all(not self.has_arc(v, u) for u, v in self.arcs)

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    def min_outdegree(self) -> int:
        return min((self.out_degree(v) for v in range(self.n)), default=0)

    def min_semidegree(self) -> int:
        return min((min(self.out_degree(v), self.in_degree(v))
                    for v in range(self.n)), default=0)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n, self.arcs) == (other.n, other.arcs)

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    @staticmethod
    def from_json(obj: dict) -> "Digraph":
        return Digraph(obj["n"], [tuple(a) for a in obj["arcs"]])


def matching_to_digraph(G: Graph, M: Matching) -> Digraph:
    """Arc partner(x) -> w for every non-matching edge xw of G.

    The outdegree of each vertex x equals deg_G(partner(x)) - 1. The result
    has no directed cycle of length <= k exactly when M is isolated in the
    k-switch graph.
    """
    if not M.is_perfect:
        raise ValueError("matching must be perfect")
    p = M.partners()
    arcs = []
    for x, w in G.edges:
        if p[x] == w:
            continue
        arcs.append((p[x], w))
        arcs.append((p[w], x))
    return Digraph(G.n, arcs)


def digraph_to_bip(D: Digraph) -> tuple[Graph, Matching]:
    """Bipartite graph on 2n vertices with the diagonal matching a_i b_i,
    plus a_i b_j for every arc u_i -> u_j. Min degree = min semidegree + 1."""
    n = D.n
    edges = [(i, n + i) for i in range(n)]
    edges += [(u, n + v) for u, v in D.arcs]
    G = Graph(2 * n, edges,
              bipartition=(list(range(n)), list(range(n, 2 * n))),
              family={"name": "digraph_bip", "params": {"n": n}})
    M = Matching(G, tuple((i, n + i) for i in range(n)), _trusted=True)
    return G, M


def bip_to_digraph(G: Graph, M: Matching) -> Digraph:
    """Inverse translation: arc u_i -> u_j when a_i b_j is an edge of G,
    where a_i enumerates the first part and b_i = partner of a_i in M."""
    if G.bipartition is None:
        raise ValueError("graph must carry a bipartition")
    if not M.is_perfect:
        raise ValueError("matching must be perfect")
    part0 = list(G.bipartition[0])
    p = M.partners()
    b_index = {p[a]: i for i, a in enumerate(part0)}
    arcs = []
    for i, a in enumerate(part0):
        for w in G.neighbors[a]:
            j = b_index[w]
            if j != i:
                arcs.append((i, j))
    return Digraph(len(part0), arcs)


def has_directed_cycle_at_most(D: Digraph, k: int):
    """(found, witness) with the witness a shortest directed cycle of
    length <= k, searched by iterative deepening from every vertex."""
    for length in range(2, k + 1):
        for start in range(D.n):
            path = [start]
            on_path = 1 << start

            def dfs(v, depth):
                nonlocal on_path
                if depth == length:
                    return D.has_arc(v, start)
                for w in D.out_neighbors(v):
                    if on_path >> w & 1 or w < start:
                        continue
                    if depth + 1 == length and not D.has_arc(w, start):
                        continue
                    path.append(w)
                    on_path |= 1 << w
                    if dfs(w, depth + 1):
                        return True
                    path.pop()
                    on_path ^= 1 << w
                return False

            if dfs(start, 1):
                return True, list(path)
    return False, None


def gen_Hp(p: int) -> Digraph:
    """Circulant oriented graph: arc u_i -> u_j iff j - i in {1..floor((p-1)/2)}
    mod p. Attains the maximal semidegree floor((p-1)/2)."""
    if p < 3:
        raise ValueError("p must be at least 3")
    d = (p - 1) // 2
    arcs = [(i, (i + s) % p) for i in range(p) for s in range(1, d + 1)]
    return Digraph(p, arcs)


def gen_isolated_general(n: int) -> tuple[Graph, Matching]:
    """General n-vertex graph (n even, >= 8) whose diagonal matching is
    isolated in the 2-switch graph; min degree 2*ceil(n/8) + ceil(n/4) - 2.

    Built from the circulant on p = n/2 vertices: each out-neighbourhood is
    split near-evenly into A_i (the smaller circulant offsets, ceil half)
    and B_i; a_i is joined to both covers of A_i, b_i to both covers of B_i.
    """
    if n % 2 != 0 or n < 8:
        raise ValueError("n must be even and at least 8")
    p = n // 2
    d = (p - 1) // 2
    cut = (d + 1) // 2  # |A_i| = ceil(d/2)
    edges = [(i, p + i) for i in range(p)]
    for i in range(p):
        for s in range(1, d + 1):
            j = (i + s) % p
            src = i if s <= cut else p + i  # a_i for A_i, b_i for B_i
            edges.append((src, j))
            edges.append((src, p + j))
    G = Graph(n, edges, family={"name": "isolated_general", "params": {"n": n}})
    M = Matching(G, tuple((i, p + i) for i in range(p)), _trusted=True)
    return G, M
