"""Graph representation, degree/Ore predicates, and counterexample family generators.

Vertices are the integers ``0..n-1``. Adjacency is stored both as per-vertex
bitmasks (O(1) membership tests dominate the reconfiguration case analyses)
and as sorted neighbour tuples (iteration dominates enumeration). Graphs are
immutable after construction and safe to share.

All generators are deterministic: identical parameters produce identical edge
sets. Rational parameters (``gamma``) are handled with ``fractions.Fraction``
so integrality preconditions are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DivisibilityViolation,
    InfeasibleDegreeError,
    NonCrossingEdgeError,
    OreBipOnNonBipartiteError,
    SelfLoopError,
    UnbalancedBipartitionError,
)
from .rng import substream


def as_fraction(gamma) -> Fraction:
    """Coerce a gamma parameter (Fraction, int, or '2/3' string) to Fraction."""
    if isinstance(gamma, Fraction):
        return gamma
    if isinstance(gamma, str):
        return Fraction(gamma)
    return Fraction(gamma)


class Graph:
    """Undirected simple graph, optionally tagged with a balanced bipartition."""

    __slots__ = ("n", "edges", "adj", "neighbors", "bipartition", "side",
                 "family", "edge_index", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 bipartition: Optional[Sequence[Sequence[int]]] = None,
                 family: Optional[dict] = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        side = None
        if bipartition is not None:
            part0, part1 = (tuple(sorted(bipartition[0])), tuple(sorted(bipartition[1])))
            if len(part0) != len(part1):
                raise UnbalancedBipartitionError(
                    f"parts have sizes {len(part0)} and {len(part1)}")
            if sorted(part0 + part1) != list(range(n)):
                raise UnbalancedBipartitionError("bipartition must partition the vertex set")
            side = [0] * n
            for v in part1:
                side[v] = 1
            bipartition = (part0, part1)

        canon = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if side is not None and side[u] == side[v]:
                raise NonCrossingEdgeError(f"edge ({u},{v}) lies inside one part")
            canon.add((u, v) if u < v else (v, u))

        self.n = n
        self.edges = tuple(sorted(canon))
        self.bipartition = bipartition
        self.side = tuple(side) if side is not None else None
        self.family = family

        adj = [0] * n
        nbrs = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj = tuple(adj)
        self.neighbors = tuple(tuple(sorted(ns)) for ns in nbrs)
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        self._hash = hash((self.n, self.edges, self.bipartition))

    # identity ignores the informational `family` tag
    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.edges, self.bipartition) == (other.n, other.edges, other.bipartition)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        tag = f", bipartite {len(self.bipartition[0])}+{len(self.bipartition[1])}" \
            if self.bipartition else ""
        return f"Graph(n={self.n}, m={len(self.edges)}{tag})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    @property
    def is_bipartite_tagged(self) -> bool:
        return self.bipartition is not None

    @property
    def n_half(self) -> int:
        if self.bipartition is None:
            raise OreBipOnNonBipartiteError("graph has no recorded bipartition")
        return len(self.bipartition[0])

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.bipartition is not None:
            out["bipartition"] = [list(self.bipartition[0]), list(self.bipartition[1])]
        if self.family is not None:
            out["family"] = self.family
        return out

    @staticmethod
    def from_json(obj: dict) -> "Graph":
        return Graph(obj["n"], [tuple(e) for e in obj["edges"]],
                     bipartition=obj.get("bipartition"), family=obj.get("family"))


def build_graph(n: int, edges: Iterable[tuple[int, int]],
                bipartition=None, family=None) -> Graph:
    """Validate and build a Graph; duplicate edges are deduplicated."""
    return Graph(n, edges, bipartition=bipartition, family=family)


@dataclass(frozen=True)
class DegreeReport:
    """Minimum degree plus Ore minima over non-adjacent pairs.

    ``ore_general`` is +inf on complete graphs (no non-adjacent pair exists);
    ``ore_bip`` ranges over non-adjacent cross-part pairs and is None when the
    graph carries no bipartition.
    """
    min_degree: int
    ore_general: float
    ore_bip: Optional[float]


def degree_report(G: Graph) -> DegreeReport:
    degs = [G.degree(v) for v in range(G.n)]
    min_degree = min(degs) if G.n else 0

    ore_general = math.inf
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if not G.has_edge(u, v):
                s = degs[u] + degs[v]
                if s < ore_general:
                    ore_general = s

    ore_bip = None
    if G.bipartition is not None:
        ore_bip = math.inf
        for u in G.bipartition[0]:
            for v in G.bipartition[1]:
                if not G.has_edge(u, v):
                    s = degs[u] + degs[v]
                    if s < ore_bip:
                        ore_bip = s
    return DegreeReport(min_degree, ore_general, ore_bip)


def ore_bip_minimum(G: Graph) -> float:
    """Ore minimum over non-adjacent cross pairs; raises on non-bipartite input."""
    if G.bipartition is None:
        raise OreBipOnNonBipartiteError("graph has no recorded bipartition")
    return degree_report(G).ore_bip


# ---------------------------------------------------------------------------
# elementary builders
# ---------------------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)],
                 family={"name": "K", "params": {"n": n}})


def complete_bipartite(a: int, b: int) -> Graph:
    n = a + b
    edges = [(u, a + w) for u in range(a) for w in range(b)]
    bip = (list(range(a)), list(range(a, n))) if a == b else None
    return Graph(n, edges, bipartition=bip,
                 family={"name": "K_bip", "params": {"a": a, "b": b}})


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)],
                 family={"name": "C", "params": {"m": m}})


def gen_cycle_union(k: int, c: int) -> Graph:
    """Disjoint union of c cycles of length 2k+2 (n = c(2k+2) vertices)."""
    L = 2 * k + 2
    edges = []
    for j in range(c):
        base = j * L
        edges.extend((base + i, base + (i + 1) % L) for i in range(L))
    return Graph(c * L, edges, family={"name": "cycle_union", "params": {"k": k, "c": c}})


# ---------------------------------------------------------------------------
# lower-bound families
# ---------------------------------------------------------------------------

def _clique_edges(block):
    return [(block[i], block[j]) for i in range(len(block)) for j in range(i + 1, len(block))]


def _cross_edges(a_block, b_block):
    return [(a, b) for a in a_block for b in b_block]


def gen_G_family(k: int, p: int, gamma, n: int) -> Graph:
    """Three-layer graph X|Y|Z whose gamma*n-matching switch graph shatters into 2^p parts.

    X induces p disjoint cycles of length 2(k+1); Y and Z are independent;
    Y is complete to X and Z. Requires gamma*n/2 integral and >= p(k+1).
    """
    gamma = as_fraction(gamma)
    half = gamma * n / 2
    if half.denominator != 1:
        raise DivisibilityViolation(f"gamma*n/2 = {half} is not an integer")
    half = int(half)
    if half < p * (k + 1):
        raise DivisibilityViolation(
            f"gamma*n/2 = {half} < p(k+1) = {p * (k + 1)}")
    x_size = 2 * p * (k + 1)
    y_size = half - p * (k + 1)
    z_size = n - x_size - y_size
    if z_size < 0:
        raise DivisibilityViolation(f"layer sizes exceed n={n}")

    X = list(range(x_size))
    Y = list(range(x_size, x_size + y_size))
    Z = list(range(x_size + y_size, n))
    edges = []
    L = 2 * (k + 1)
    for j in range(p):
        cyc = X[j * L:(j + 1) * L]
        edges.extend((cyc[i], cyc[(i + 1) % L]) for i in range(L))
    edges += _cross_edges(Y, X + Z)
    return Graph(n, edges, family={"name": "G_family",
                                   "params": {"k": k, "p": p, "gamma": str(gamma), "n": n}})


def gen_G_family_bip(k: int, p: int, gamma, n: int) -> Graph:
    """Balanced bipartite analogue of gen_G_family, on 2n vertices.

    Per side: |X_i| = p(k+1); Y_1/Z_1 take the ceilings/floors of
    gamma*n/2 - p(k+1)/2 and (1-gamma/2)n - p(k+1)/2, with floors and
    ceilings permuted on side 2. X_1 u X_2 induces p alternating cycles of
    length 2(k+1); Y_i is complete to X_{3-i} u Z_{3-i}.
    """
    gamma = as_fraction(gamma)
    gn = gamma * n
    if gn.denominator != 1:
        raise DivisibilityViolation(f"gamma*n = {gn} is not an integer")
    gn = int(gn)
    if gn < p * (k + 1):
        raise DivisibilityViolation(f"gamma*n = {gn} < p(k+1) = {p * (k + 1)}")

    xk = p * (k + 1)
    y_exact = Fraction(gn, 2) - Fraction(xk, 2)
    z_exact = (1 - gamma / 2) * n - Fraction(xk, 2)
    y1, z1 = math.ceil(y_exact), math.floor(z_exact)
    y2, z2 = math.floor(y_exact), math.ceil(z_exact)
    if min(y1, y2, z1, z2) < 0 or xk + y1 + z1 != n:
        raise DivisibilityViolation(f"layer sizes infeasible for n={n}")

    # side 1 occupies 0..n-1 as X1|Y1|Z1, side 2 occupies n..2n-1 as X2|Y2|Z2
    X1 = list(range(xk))
    Y1 = list(range(xk, xk + y1))
    Z1 = list(range(xk + y1, n))
    X2 = list(range(n, n + xk))
    Y2 = list(range(n + xk, n + xk + y2))
    Z2 = list(range(n + xk + y2, 2 * n))

    edges = []
    for j in range(p):
        a = X1[j * (k + 1):(j + 1) * (k + 1)]
        b = X2[j * (k + 1):(j + 1) * (k + 1)]
        for i in range(k + 1):
            edges.append((a[i], b[i]))
            edges.append((b[i], a[(i + 1) % (k + 1)]))
    edges += _cross_edges(Y1, X2 + Z2)
    edges += _cross_edges(Y2, X1 + Z1)
    return Graph(2 * n, edges,
                 bipartition=(X1 + Y1 + Z1, X2 + Y2 + Z2),
                 family={"name": "G_family_bip",
                         "params": {"k": k, "p": p, "gamma": str(gamma), "n": n}})


def gen_F(k: int, n: int) -> Graph:
    """(k+1)-layer graph with clique end layers and complete consecutive links.

    X_1 and X_{k+1} induce cliques, middle layers are independent, and
    consecutive layers are completely joined. When (k+1) does not divide n,
    the leftover vertices go one each to X_2, X_k, X_1, X_{k+1} in that
    round-robin order.
    """
    if n % 2 != 0:
        raise DivisibilityViolation(f"n = {n} must be even")
    layers = k + 1
    base = n // layers
    sizes = [base] * layers
    order = [2] + ([k] if k != 2 else []) + [1, layers]
    extra = n - base * layers
    for t in range(extra):
        sizes[order[t % len(order)] - 1] += 1

    blocks, start = [], 0
    for s in sizes:
        blocks.append(list(range(start, start + s)))
        start += s

    edges = _clique_edges(blocks[0]) + _clique_edges(blocks[-1])
    for i in range(layers - 1):
        edges += _cross_edges(blocks[i], blocks[i + 1])
    return Graph(n, edges, family={"name": "F", "params": {"k": k, "n": n},
                                   "sizes": sizes})


def gen_F_bip(k: int, n: int) -> Graph:
    """Blow-up of the cycle C_{2(k+1)} into independent sets, on 2n vertices.

    Each cycle vertex becomes a block of size n/(k+1); when (k+1) does not
    divide n the extra vertices are added in pairs to consecutive blocks,
    taking the pair slots (U_1,U_2), (U_3,U_4), ... in odd-first order
    (slots 1, 3, 5, ..., then 2, 4, ...) so the enlarged blocks spread
    around the cycle and the minimum degree comes out at floor(2n/3) for
    k = 2 and floor(n/2) for k = 3. The result is 2n/(k+1)-regular exactly
    when (k+1) | n.
    """
    if n < k + 1:
        raise DivisibilityViolation(f"n = {n} < k+1 = {k + 1}")
    m = 2 * (k + 1)
    base = n // (k + 1)
    sizes = [base] * m
    slots = list(range(0, k + 1, 2)) + list(range(1, k + 1, 2))
    for t in range(n % (k + 1)):
        s = slots[t]
        sizes[2 * s] += 1
        sizes[2 * s + 1] += 1

    blocks, start = [], 0
    for s in sizes:
        blocks.append(list(range(start, start + s)))
        start += s
    edges = []
    for i in range(m):
        edges += _cross_edges(blocks[i], blocks[(i + 1) % m])
    part0 = [v for i in range(0, m, 2) for v in blocks[i]]
    part1 = [v for i in range(1, m, 2) for v in blocks[i]]
    return Graph(2 * n, edges, bipartition=(part0, part1),
                 family={"name": "F_bip", "params": {"k": k, "n": n},
                         "sizes": sizes})


def f_invariant_edges(G: Graph) -> list[tuple[int, int]]:
    """The edge class of an F-family graph whose matched-edge count is
    invariant under short switches: the first clique for gen_F, the first
    pair of consecutive blow-up blocks for gen_F_bip."""
    if G.family is None or G.family.get("name") not in ("F", "F_bip"):
        raise ValueError("graph is not an F-family graph")
    sizes = G.family["sizes"]
    if G.family["name"] == "F":
        s0 = sizes[0]
        return [e for e in G.edges if e[0] < s0 and e[1] < s0]
    s0, s1 = sizes[0], sizes[1]
    return [e for e in G.edges if e[0] < s0 and s0 <= e[1] < s0 + s1]


# ---------------------------------------------------------------------------
# random graphs with a minimum-degree floor
# ---------------------------------------------------------------------------

def gen_random_min_degree(n: int, delta: int, bipartite: bool = False,
                          seed: int = 0) -> Graph:
    """Random graph with min degree >= delta, deterministic per seed.

    Two phases: include each admissible edge independently at density
    calibrated to land near delta, then repair deficient vertices greedily
    (lowest-index deficient vertex gains an edge to its smallest-degree
    non-neighbour).
    """
    rng = substream(seed, "graph-gen")
    if bipartite:
        if n % 2 != 0:
            raise InfeasibleDegreeError("bipartite variant needs even n")
        half = n // 2
        if delta > half:
            raise InfeasibleDegreeError(f"delta={delta} > n_half={half}")
        candidates = [(u, half + w) for u in range(half) for w in range(half)]
        density = min(1.0, (delta + 1) / half) if half else 0.0
    else:
        if delta >= n:
            raise InfeasibleDegreeError(f"delta={delta} >= n={n}")
        candidates = [(u, v) for u in range(n) for v in range(u + 1, n)]
        density = min(1.0, (delta + 1) / (n - 1)) if n > 1 else 0.0

    present = set(e for e in candidates if rng.random() < density)
    deg = [0] * n
    adj = [0] * n
    for u, v in present:
        deg[u] += 1
        deg[v] += 1
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    def allowed(u, v):
        if bipartite:
            return (u < half) != (v < half)
        return True

    changed = True
    while changed:
        changed = False
        for v in range(n):
            while deg[v] < delta:
                pool = [w for w in range(n)
                        if w != v and not adj[v] >> w & 1 and allowed(v, w)]
                if not pool:
                    raise InfeasibleDegreeError(f"cannot raise degree of vertex {v}")
                w = min(pool, key=lambda x: (deg[x], x))
                present.add((v, w) if v < w else (w, v))
                adj[v] |= 1 << w
                adj[w] |= 1 << v
                deg[v] += 1
                deg[w] += 1
                changed = True

    bip = (list(range(half)), list(range(half, n))) if bipartite else None
    return Graph(n, present, bipartition=bip,
                 family={"name": "random_min_degree",
                         "params": {"n": n, "delta": delta,
                                    "bipartite": bipartite, "seed": seed}})
