"""Random-switch Markov chains on perfect matchings and their exact
finite-state diagnostics.

The main chain proposes an alternating cycle through at most four random
matched vertices: draw u_1..u_4 independently and uniformly (from one fixed
side on bipartite graphs), collapse at the first repeat of u_1, interleave
the matched partners, and if the resulting vertex sequence is a simple cycle
of the graph, switch it with probability 1/2. The uniform 2- and 3-switch
chains reuse the same sampling scheme truncated to j matched edges, so their
kernels are symmetric by construction.

Exact transition matrices are assembled in rational arithmetic by summing
every (vertex draw, coin) outcome, so symmetry checks are bit-exact.
canonical_path implements the explicit routing between any two perfect
matchings using only chain moves; its congestion gives the standard
2 * rho * log|Omega| mixing-time bound that the diagnostics are checked
against.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import (CaseLadderStuck, EnumerationBudgetExceeded,
                     NoPerfectMatchingError, OmegaTooLarge)
from .graphs import Graph
from .matchings import Matching, enumerate_matchings, iter_matchings
from .reconfig import (ReconfigPath, SwitchStep, _apply, _components,
                       _cycle_step, _edge, _partner_edges)
from .rng import substream

CHAIN_KINDS = ("gamma4", "switch2", "switch3")


def _chain_order(kind: str) -> int:
    if kind == "gamma4":
        return 4
    if kind in ("switch2", "switch3"):
        return int(kind[-1])
    raise ValueError(f"unknown chain kind {kind!r}; expected one of {CHAIN_KINDS}")


@dataclass(frozen=True)
class ChainSpec:
    """A chain kind bound to its host graph. Laziness 1/2 is built into every
    kind's accept step."""
    kind: str
    graph: Graph

    def __post_init__(self):
        _chain_order(self.kind)

    def step(self, M: "Matching", rng) -> "Matching":
        j = _chain_order(self.kind)
        if j == 4:
            return gamma_step(self.graph, M, rng)
        return uniform_switch_step(self.graph, M, j, rng)

    def diagnostics(self, omega_cap: int = 5000) -> "ChainDiagnostics":
        return exact_diagnostics(self.graph, self.kind, omega_cap=omega_cap)

    def simulate(self, steps: int, seed: int, **kw) -> "SimulationSummary":
        return simulate(self.graph, self.kind, steps, seed, **kw)


def _sample_side(G: Graph) -> list[int]:
    if G.bipartition is not None:
        return list(G.bipartition[0])
    return list(range(G.n))


def _proposal_cycle(G: Graph, p: list[int], draws) -> Optional[list[int]]:
    """Vertex sequence (u_1, v_1, ..., u_l, v_l) if it forms a simple
    alternating cycle of G, else None.

    Collapse rule: only a repeat of u_1 truncates the draw; any other repeat
    makes the sequence non-simple and rejects.
    """
    u1 = draws[0]
    us = draws
    for i in range(1, len(draws)):
        if draws[i] == u1:
            us = draws[:i]
            break
    if len(us) < 2:
        return None
    cyc = []
    for u in us:
        cyc.append(u)
        cyc.append(p[u])
    if len(set(cyc)) != len(cyc):
        return None
    m = len(cyc)
    for i in range(1, m + 1, 2):
        if not G.has_edge(cyc[i], cyc[(i + 1) % m]):
            return None
    return cyc


def _toggle_mask(G: Graph, edge_mask: int, cyc: list[int]) -> int:
    m = len(cyc)
    for i in range(m):
        a, b = cyc[i], cyc[(i + 1) % m]
        edge_mask ^= 1 << G.edge_index[_edge(a, b)]
    return edge_mask


def _chain_move(G: Graph, p: list[int], side: list[int], j: int, rng) -> bool:
    """One in-place chain step on the partner array; True if a switch fired."""
    draws = tuple(side[rng.randrange(len(side))] for _ in range(j))
    cyc = _proposal_cycle(G, p, draws)
    if cyc is None:
        return False
    if rng.random() >= 0.5:
        return False
    m = len(cyc)
    for i in range(0, m, 2):
        u, v = cyc[i], cyc[i + 1]
        p[u] = p[v] = -1
    for i in range(1, m, 2):
        a, b = cyc[i], cyc[(i + 1) % m]
        p[a] = b
        p[b] = a
    return True


def gamma_step(G: Graph, M: Matching, rng) -> Matching:
    """One step of the 4-vertex switch chain from a perfect matching."""
    if not M.is_perfect:
        raise ValueError("chain operates on perfect matchings")
    p = M.partners()
    if _chain_move(G, p, _sample_side(G), 4, rng):
        return Matching(G, _partner_edges(p), _trusted=True)
    return M


def uniform_switch_step(G: Graph, M: Matching, j: int, rng) -> Matching:
    """One step of the uniform j-switch chain, j in {2, 3}."""
    if j not in (2, 3):
        raise ValueError("j must be 2 or 3")
    if not M.is_perfect:
        raise ValueError("chain operates on perfect matchings")
    p = M.partners()
    if _chain_move(G, p, _sample_side(G), j, rng):
        return Matching(G, _partner_edges(p), _trusted=True)
    return M


def transition_matrix(G: Graph, kind: str,
                      omega: list[Matching]) -> list[list[Fraction]]:
    """Exact row-stochastic matrix over `omega`, by enumerating all draws."""
    j = _chain_order(kind)
    side = _sample_side(G)
    index = {m.edge_mask: i for i, m in enumerate(omega)}
    N = len(omega)
    denom = 2 * len(side) ** j
    counts = [[0] * N for _ in range(N)]
    for i, M in enumerate(omega):
        p = M.partners()
        row = counts[i]
        stay = 0
        for draws in itertools.product(side, repeat=j):
            cyc = _proposal_cycle(G, p, draws)
            if cyc is None:
                stay += 2
            else:
                row[index[_toggle_mask(G, M.edge_mask, cyc)]] += 1
                stay += 1
        row[i] += stay
    return [[Fraction(c, denom) for c in row] for row in counts]


@dataclass
class ChainDiagnostics:
    kind: str
    omega: int
    matrix: list[list[Fraction]]
    is_symmetric: bool
    stationary: list[Fraction]
    lambda_star: float
    spectral_gap: float
    tv_curve: list[tuple[int, float]]
    tau_mix: Optional[int]

    def to_json(self) -> dict:
        return {"kind": self.kind, "omega": self.omega,
                "symmetric": self.is_symmetric,
                "spectral_gap": self.spectral_gap,
                "tau_mix_empirical": self.tau_mix,
                "tv_curve": [[t, d] for t, d in self.tv_curve]}


def exact_diagnostics(G: Graph, kind: str = "gamma4", omega_cap: int = 5000,
                      tv_limit: int = 2000) -> ChainDiagnostics:
    """Exact transition matrix, spectrum, and total-variation decay.

    lambda_star is the largest eigenvalue modulus after excluding a single
    copy of the top eigenvalue, so reducible chains report spectral gap 0.
    tau_mix is the first t with worst-case TV distance below 1/4 (None if
    not reached within tv_limit).
    """
    try:
        omega = enumerate_matchings(G, G.n // 2, budget=omega_cap) if G.n % 2 == 0 else []
    except EnumerationBudgetExceeded as exc:
        raise OmegaTooLarge(f"|Omega| exceeds cap {omega_cap}") from exc
    N = len(omega)
    P = transition_matrix(G, kind, omega)
    for i in range(N):
        assert sum(P[i]) == 1, "row not stochastic"
    symmetric = all(P[i][j] == P[j][i] for i in range(N) for j in range(i + 1, N))
    stationary = [Fraction(1, N) for _ in range(N)] if N else []

    if N == 0:
        return ChainDiagnostics(kind, 0, P, True, [], 0.0, 0.0, [], None)

    Pf = np.array([[float(x) for x in row] for row in P])
    if symmetric:
        vals = np.linalg.eigvalsh(Pf)
    else:
        vals = np.sort(np.abs(np.linalg.eigvals(Pf)))
    lambda_star = float(max(abs(vals[:-1]), default=0.0)) if N > 1 else 0.0
    gap = max(0.0, 1.0 - lambda_star)

    pi = 1.0 / N
    tv_curve = []
    tau = None
    Pt = np.eye(N)
    horizon = tv_limit if gap > 1e-12 else 8
    for t in range(horizon + 1):
        d = float(np.max(0.5 * np.abs(Pt - pi).sum(axis=1)))
        tv_curve.append((t, d))
        if d < 0.25:
            tau = t
            break
        Pt = Pt @ Pf
    return ChainDiagnostics(kind, N, P, symmetric, stationary,
                            lambda_star, gap, tv_curve, tau)


@dataclass
class SimulationSummary:
    kind: str
    steps: int
    seed: int
    histogram: dict
    final: Matching
    visited: int
    chi_square: Optional[float] = None
    chi_square_dof: Optional[int] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "steps": self.steps, "seed": self.seed,
                "visited": self.visited, "chi_square": self.chi_square,
                "chi_square_dof": self.chi_square_dof,
                "final": self.final.to_json()}


def simulate(G: Graph, kind: str, steps: int, seed: int,
             start: Optional[Matching] = None,
             omega: Optional[list[Matching]] = None) -> SimulationSummary:
    """Run the chain for `steps` steps; deterministic per seed.

    The histogram counts the state after every step plus the initial state.
    When `omega` is supplied (or the graph is small enough to pass it in),
    a chi-square statistic against the uniform distribution is included.
    """
    j = _chain_order(kind)
    if start is None:
        start = next(iter_matchings(G, G.n // 2), None) if G.n % 2 == 0 else None
        if start is None:
            raise NoPerfectMatchingError("graph has no perfect matching")
    rng = substream(seed, "chain")
    side = _sample_side(G)
    p = start.partners()
    hist: dict[int, int] = defaultdict(int)

    def key(partner):
        mask = 0
        for v, w in enumerate(partner):
            if 0 <= v < w:
                mask |= 1 << G.edge_index[(v, w)]
        return mask

    cur_key = start.edge_mask
    hist[cur_key] += 1
    for _ in range(steps):
        if _chain_move(G, p, side, j, rng):
            cur_key = key(p)
        hist[cur_key] += 1

    chi = dof = None
    histogram = dict(hist)
    if omega is not None:
        total = steps + 1
        expected = total / len(omega)
        chi = sum((hist.get(m.edge_mask, 0) - expected) ** 2 / expected for m in omega)
        dof = len(omega) - 1
        histogram = {i: hist.get(m.edge_mask, 0) for i, m in enumerate(omega)}
    final = Matching(G, _partner_edges(p), _trusted=True)
    return SimulationSummary(kind, steps, seed, histogram, final,
                             visited=len(hist), chi_square=chi, chi_square_dof=dof)


# ---------------------------------------------------------------------------
# canonical paths
# ---------------------------------------------------------------------------

def _pigeonhole_pair(G, cur, forbidden, end_a, end_b):
    """Smallest matched pair (x, y) of `cur` away from `forbidden` with
    x adjacent to end_a and y adjacent to end_b."""
    for a in range(len(cur)):
        b = cur[a]
        if b <= a or a in forbidden or b in forbidden:
            continue
        for x, y in ((a, b), (b, a)):
            if G.has_edge(x, end_a) and G.has_edge(y, end_b):
                return x, y
    raise CaseLadderStuck("no detour pair available; degree hypothesis violated")


def canonical_path(G: Graph, S: Matching, T: Matching) -> ReconfigPath:
    """The explicit chain-move routing from S to T.

    Alternating cycles of S delta T are processed in order of smallest
    vertex. Within a cycle the walk keeps either an anchored state (an
    anchor edge v_1 v_2k plus the already-rewired prefix) or a detoured
    state (the anchor runs through a detour pair x,y taken from the
    matching). Each move switches one simple cycle of length at most 8 and
    strictly advances the progress index, so the whole path has length at
    most n.
    """
    if S.graph != T.graph or not S.is_perfect or not T.is_perfect:
        raise ValueError("endpoints must be perfect matchings of one graph")
    ps, pt = S.partners(), T.partners()
    comps = _components(ps, pt)
    assert all(is_cycle for is_cycle, _ in comps)
    cur = list(ps)
    steps: list[SwitchStep] = []

    def do(cyc):
        removed, added = _cycle_step(G, cur, cyc)
        assert len(cyc) <= 8
        _apply(cur, removed, added)
        steps.append(SwitchStep(removed, added))

    for _, vs in comps:
        q = len(vs) // 2

        def V(i):
            return vs[i - 1]

        state = ("anchor", 1, None, None)
        while not (state[0] == "anchor" and state[1] == q):
            kind, k, x, y = state
            if kind == "anchor":
                ls = [l for l in (1, 2, 3)
                      if k + l <= q and G.has_edge(V(1), V(2 * (k + l)))]
                if ls:
                    l = max(ls)
                    cyc = [V(1)] + [V(2 * k + t) for t in range(2 * l + 1)]
                    do(cyc)
                    state = ("anchor", k + l, None, None)
                else:
                    head = [V(1)] + [V(2 * k + t) for t in range(5)]
                    x2, y2 = _pigeonhole_pair(G, cur, set(head), V(1), V(2 * k + 4))
                    do(head + [y2, x2])
                    state = ("detour", k + 2, x2, y2)
            else:
                if (x, y) == (V(2 * k + 4), V(2 * k + 3)):
                    do([V(2 * k + 3), V(2 * k), V(2 * k + 1), V(2 * k + 2)])
                    state = ("anchor", k + 2, None, None)
                    continue
                if (x, y) == (V(2 * k + 3), V(2 * k + 4)):
                    P = [V(1), V(2 * k + 3), V(2 * k + 2), V(2 * k + 1),
                         V(2 * k), V(2 * k + 4)]
                    l = 2
                elif (x, y) == (V(2 * k + 1), V(2 * k + 2)):
                    P = [V(1), V(2 * k + 1), V(2 * k), V(2 * k + 2),
                         V(2 * k + 3), V(2 * k + 4)]
                    l = 2
                else:
                    P = [V(1), x, y, V(2 * k), V(2 * k + 1), V(2 * k + 2)]
                    l = 1
                ms = [m for m in (0, 1)
                      if k + l + m <= q and G.has_edge(V(1), V(2 * (k + l + m)))]
                if ms:
                    m = max(ms)
                    cyc = P + [V(2 * (k + l) + t) for t in range(1, 2 * m + 1)]
                    do(cyc)
                    state = ("anchor", k + l + m, None, None)
                else:
                    x2, y2 = _pigeonhole_pair(G, cur, set(P), V(1), V(2 * (k + l)))
                    do(P + [y2, x2])
                    state = ("detour", k + l, x2, y2)

    assert cur == pt, "canonical path did not reach its target"
    return ReconfigPath(S, T, tuple(steps), 4)


def congestion(G: Graph, omega: Optional[list[Matching]] = None,
               P: Optional[list[list[Fraction]]] = None):
    """Congestion rho of the canonical paths under the 4-vertex chain.

    Routes every ordered pair of perfect matchings, loads each directed
    transition with the traversing path lengths, and maximises
    load / (|Omega| * P(a,b)). Returns (rho, 2*rho*log|Omega|, loads).
    """
    if omega is None:
        omega = enumerate_matchings(G, G.n // 2)
    if P is None:
        P = transition_matrix(G, "gamma4", omega)
    index = {m.edge_mask: i for i, m in enumerate(omega)}
    N = len(omega)
    loads: dict[tuple[int, int], int] = defaultdict(int)
    for S in omega:
        for T in omega:
            if S.edge_mask == T.edge_mask:
                continue
            path = canonical_path(G, S, T)
            L = len(path.steps)
            if L > G.n:
                raise AssertionError("canonical path longer than n")
            cur = S.edge_mask
            for step in path.steps:
                nxt = cur
                for e in step.removed + step.added:
                    nxt ^= 1 << G.edge_index[e]
                loads[(index[cur], index[nxt])] += L
                cur = nxt
    rho = Fraction(0)
    for (a, b), load in loads.items():
        if P[a][b] == 0:
            raise AssertionError("canonical path uses an illegal transition")
        rho = max(rho, Fraction(load) / (N * P[a][b]))
    bound = 2.0 * float(rho) * math.log(N) if N > 1 else 0.0
    return rho, bound, dict(loads)
