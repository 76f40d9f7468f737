"""Constructive reconfiguration between matchings via bounded switches.

Builds a 4-switch path between any two same-size matchings by repeatedly
shrinking their symmetric difference (a pigeonhole 8-cycle switch handles
the generic case), refines one 8-cycle 4-switch into at most three
3-switches and one 6-cycle 3-switch into at most four 2-switches, and
composes these into k-switch paths for k in {2,3,4}.

The case ladders run best-effort: when the degree hypotheses fail and no
move exists, NoMoveFound / PatternNotFound carry the stuck configuration,
which is what the threshold scans rely on.

Internally everything operates on partner arrays (``p[v]`` is the partner of
``v`` or -1); public entry points speak Matching.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoMoveFound, PatternNotFound
from .graphs import Graph
from .matchings import Matching


@dataclass(frozen=True)
class SwitchStep:
    """One reconfiguration move: remove ``removed`` from the current matching,
    add ``added``. Both tuples are canonically sorted; j = |removed| = |added|."""
    removed: tuple[tuple[int, int], ...]
    added: tuple[tuple[int, int], ...]

    @property
    def size_class(self) -> int:
        return len(self.removed)

    def inverse(self) -> "SwitchStep":
        return SwitchStep(self.added, self.removed)

    def to_json(self) -> dict:
        return {"remove": [list(e) for e in self.removed],
                "add": [list(e) for e in self.added]}

    @staticmethod
    def from_json(obj: dict) -> "SwitchStep":
        return SwitchStep(tuple(sorted(tuple(e) for e in obj["remove"])),
                          tuple(sorted(tuple(e) for e in obj["add"])))


@dataclass(frozen=True)
class ReconfigPath:
    start: Matching
    end: Matching
    steps: tuple[SwitchStep, ...]
    k: int

    def __len__(self):
        return len(self.steps)

    def to_json(self) -> dict:
        return {"start": self.start.to_json(),
                "steps": [s.to_json() for s in self.steps],
                "end": self.end.to_json(),
                "k": self.k}

    @staticmethod
    def from_json(graph: Graph, obj: dict) -> "ReconfigPath":
        return ReconfigPath(Matching.from_json(graph, obj["start"]),
                            Matching.from_json(graph, obj["end"]),
                            tuple(SwitchStep.from_json(s) for s in obj["steps"]),
                            obj["k"])


# ---------------------------------------------------------------------------
# partner-array plumbing
# ---------------------------------------------------------------------------

def _partners(M: Matching) -> list[int]:
    return M.partners()

def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _hamming(pm: list, pt: list) -> int:
    d = 0
    for v, w in enumerate(pm):
        if w >= 0 and w != pt[v]:
            d += 1
        if pt[v] >= 0 and pt[v] != w:
            d += 1
    return d // 2


def _apply(p: list, removed, added) -> None:
    for u, v in removed:
        assert p[u] == v and p[v] == u, "removed edge not in current matching"
        p[u] = p[v] = -1
    for u, v in added:
        assert p[u] == -1 and p[v] == -1, "added edge collides"
        p[u] = v
        p[v] = u


def _cycle_step(G: Graph, cur: list, cyc: list) -> tuple:
    """Switch step defined by a simple alternating cycle given as vertices.

    Consecutive pairs must alternate strictly between current-matching edges
    and non-matching graph edges.
    """
    m = len(cyc)
    removed, added = [], []
    for i in range(m):
        a, b = cyc[i], cyc[(i + 1) % m]
        if cur[a] == b:
            removed.append(_edge(a, b))
        else:
            assert G.has_edge(a, b), f"({a},{b}) is not a graph edge"
            added.append(_edge(a, b))
    assert len(removed) == len(added) == m // 2, "cycle does not alternate"
    return tuple(sorted(removed)), tuple(sorted(added))


def _step_from(G, cur, cyc) -> SwitchStep:
    removed, added = _cycle_step(G, cur, cyc)
    return SwitchStep(removed, added)


def _components(pm: list, pt: list):
    """Alternating components of pm delta pt as (is_cycle, vertex list).

    Cycles start at their least vertex moving along the pm edge first;
    paths run from their least endpoint. Components are sorted by least
    vertex.
    """
    n = len(pm)

    def dn(v):
        out = []
        if pm[v] >= 0 and pm[v] != pt[v]:
            out.append(pm[v])
        if pt[v] >= 0 and pt[v] != pm[v]:
            out.append(pt[v])
        return out

    seen = [False] * n
    comps = []
    for v in range(n):
        if seen[v] or not dn(v):
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            seen[x] = True
            for y in dn(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        ends = sorted(x for x in comp if len(dn(x)) == 1)
        if ends:
            seq = [ends[0]]
            prev, cur_v = None, ends[0]
            while True:
                nxt = [y for y in dn(cur_v) if y != prev]
                if not nxt:
                    break
                prev, cur_v = cur_v, nxt[0]
                seq.append(cur_v)
            comps.append((False, seq))
        else:
            start = min(comp)
            seq = [start, pm[start]]
            prev, cur_v = start, pm[start]
            while True:
                nxt = [y for y in dn(cur_v) if y != prev][0]
                if nxt == start:
                    break
                prev, cur_v = cur_v, nxt
                seq.append(nxt)
            comps.append((True, seq))
    return comps


def _first_cycle(pm: list, pt: list):
    """For perfect matchings: the alternating cycle through the smallest
    differing vertex, oriented along the pm edge first. None if pm == pt."""
    r = -1
    for v, w in enumerate(pm):
        if w != pt[v]:
            r = v
            break
    if r < 0:
        return None
    seq = [r]
    cur, use_pm = r, True
    while True:
        nxt = pm[cur] if use_pm else pt[cur]
        if nxt == r:
            break
        seq.append(nxt)
        cur = nxt
        use_pm = not use_pm
    return seq


# ---------------------------------------------------------------------------
# the symmetric-difference-reducing 4-switch move
# ---------------------------------------------------------------------------

def _cur_edge_positions(cur, ws, is_cycle):
    """Indices t such that (ws[t], ws[t+1]) is a current-matching edge."""
    m = len(ws) if is_cycle else len(ws) - 1
    return [t for t in range(m) if cur[ws[t]] == ws[(t + 1) % len(ws)]]


def _window(ws, t0, length, is_cycle):
    m = len(ws)
    if is_cycle:
        return [ws[(t0 + i) % m] for i in range(length)]
    if t0 + length > m:
        return None
    return ws[t0:t0 + length]


def _closing_switch(G, cur, ws, is_cycle):
    """Odd alternating subpath u_1..u_2p (cur-edge ends, p in {2,3,4}) with
    u_1 u_2p an edge of G: switch the resulting cycle."""
    L = len(ws)
    for t0 in _cur_edge_positions(cur, ws, is_cycle):
        for p in (2, 3, 4):
            if is_cycle and 2 * p > L:
                continue
            win = _window(ws, t0, 2 * p, is_cycle)
            if win is None or cur[win[-2]] != win[-1]:
                continue
            if G.has_edge(win[0], win[-1]):
                return _cycle_step(G, cur, win)
    return None


def _pigeonhole_switch(G, cur, head):
    """8-cycle switch through u_1..u_6 and a matched pair (x,y) with
    x ~ u_6, y ~ u_1 (smallest canonical witness)."""
    u1, u6 = head[0], head[5]
    block = set(head)
    for a in range(len(cur)):
        b = cur[a]
        if b <= a or a in block or b in block:
            continue
        for x, y in ((a, b), (b, a)):
            if G.has_edge(x, u6) and G.has_edge(y, u1):
                return _cycle_step(G, cur, head + [x, y])
    return None


def _move_perfect(G, cur, tgt):
    """One symmetric-difference-reducing 4-switch for perfect matchings,
    acting on ``cur``. Works down a fixed ladder on the alternating cycle
    containing the smallest symdiff edge: whole-cycle switch when short,
    then closing-edge subpaths, then the pigeonhole 8-cycle."""
    ws = _first_cycle(cur, tgt)
    assert ws is not None
    if len(ws) <= 8:
        return _cycle_step(G, cur, ws)
    found = _closing_switch(G, cur, ws, True)
    if found is not None:
        return found
    return _pigeonhole_switch(G, cur, ws[:6])


def _move_general(G, cur, tgt):
    """One reducing switch (j <= 4) for same-size non-perfect matchings,
    trying the cases in a fixed order; each case scans the cur side first,
    then the tgt side (the move is returned with the side it applies to)."""

    def sides():
        yield "cur", cur, tgt
        yield "tgt", tgt, cur

    # Case: isolated edges of the symmetric difference.
    for side, a_, b_ in sides():
        comps = _components(a_, b_)
        for is_cycle, ws in comps:
            if not is_cycle and len(ws) == 2 and a_[ws[0]] == ws[1]:
                # a_-edge isolated in the symdiff: swap it into the other side
                for v in range(len(a_)):
                    w = b_[v]
                    if w > v and a_[v] != w:
                        other = "tgt" if side == "cur" else "cur"
                        return other, ((v, w),), (_edge(ws[0], ws[1]),)

    # Case: even alternating paths of length at most 6.
    for side, a_, b_ in sides():
        for is_cycle, ws in _components(a_, b_):
            if not is_cycle and len(ws) % 2 == 1 and len(ws) <= 7:
                removed = [_edge(ws[t], ws[t + 1]) for t in range(len(ws) - 1)
                           if a_[ws[t]] == ws[t + 1]]
                added = [_edge(ws[t], ws[t + 1]) for t in range(len(ws) - 1)
                         if a_[ws[t]] != ws[t + 1]]
                if len(removed) == len(added):
                    return side, tuple(sorted(removed)), tuple(sorted(added))
        break  # even paths are side-symmetric; one scan suffices

    # Case: odd subpaths (p in {2,3,4}) with a closing edge.
    for side, a_, b_ in sides():
        for is_cycle, ws in _components(a_, b_):
            got = _closing_switch(G, a_, ws, is_cycle)
            if got is not None:
                return side, got[0], got[1]

    # Case: odd length-5 subpaths, via an unmatched neighbour or pigeonhole.
    for side, a_, b_ in sides():
        for is_cycle, ws in _components(a_, b_):
            for t0 in _cur_edge_positions(a_, ws, is_cycle):
                win = _window(ws, t0, 6, is_cycle)
                if win is None or a_[win[4]] != win[5]:
                    continue
                u1, u2, u3, u4, u5, u6 = win
                removed = tuple(sorted([_edge(u1, u2), _edge(u3, u4), _edge(u5, u6)]))
                for w in G.neighbors[u1]:
                    if a_[w] == -1:
                        added = tuple(sorted([_edge(w, u1), _edge(u2, u3), _edge(u4, u5)]))
                        return side, removed, added
                for w in G.neighbors[u6]:
                    if a_[w] == -1:
                        added = tuple(sorted([_edge(u2, u3), _edge(u4, u5), _edge(u6, w)]))
                        return side, removed, added
                got = _pigeonhole_switch(G, a_, list(win))
                if got is not None:
                    return side, got[0], got[1]

    # Case: two alternating length-3 paths, one dominated by each matching.
    comps = _components(cur, tgt)
    P = Q = None
    for is_cycle, ws in comps:
        if is_cycle or len(ws) != 4:
            continue
        if cur[ws[0]] == ws[1]:
            P = P or ws
        else:
            Q = Q or ws
    if P is not None and Q is not None:
        removed = tuple(sorted([_edge(P[0], P[1]), _edge(P[2], P[3]),
                                _edge(Q[1], Q[2])]))
        added = tuple(sorted([_edge(P[1], P[2]), _edge(Q[0], Q[1]),
                              _edge(Q[2], Q[3])]))
        return "cur", removed, added
    return None


def four_switch_path(G: Graph, M: Matching, M_prime: Matching,
                     gamma=None) -> ReconfigPath:
    """Path of 4-switches from M to M_prime, length at most |M delta M_prime|.

    Every step strictly shrinks the symmetric difference. Moves found on the
    target side are recorded as inverted steps at the tail of the path.
    Raises NoMoveFound (carrying the stuck pair) when the case ladder is
    exhausted, which can only happen below the degree-sum hypotheses.
    """
    if M.graph != M_prime.graph or M.size != M_prime.size:
        raise ValueError("endpoints must be same-size matchings of one graph")
    if gamma is not None:
        from .switchgraph import matching_size_for_gamma
        if M.size != matching_size_for_gamma(G, gamma):
            raise ValueError("endpoints are not gamma-matchings for the given gamma")
    pm, pt = _partners(M), _partners(M_prime)
    perfect = M.is_perfect
    front: list[SwitchStep] = []
    back: list[SwitchStep] = []
    d = _hamming(pm, pt)
    while d > 0:
        if perfect:
            got = _move_perfect(G, pm, pt)
            if got is not None:
                side, removed, added = "cur", got[0], got[1]
            else:
                got2 = _move_perfect(G, pt, pm)
                if got2 is None:
                    raise NoMoveFound("4-switch ladder exhausted", M, M_prime)
                side, removed, added = "tgt", got2[0], got2[1]
        else:
            got = _move_general(G, pm, pt)
            if got is None:
                raise NoMoveFound("4-switch ladder exhausted", M, M_prime)
            side, removed, added = got
        if side == "cur":
            _apply(pm, removed, added)
            front.append(SwitchStep(removed, added))
        else:
            _apply(pt, removed, added)
            back.append(SwitchStep(removed, added))
        d_new = _hamming(pm, pt)
        assert d_new < d, "switch did not reduce the symmetric difference"
        d = d_new
    steps = tuple(front + [s.inverse() for s in reversed(back)])
    return ReconfigPath(M, M_prime, steps, 4)


# ---------------------------------------------------------------------------
# refinements
# ---------------------------------------------------------------------------

def _support_cycle(cur, step):
    """The single alternating cycle swapped by `step`, as an oriented vertex
    list rooted at its smallest vertex with the first edge in ``cur``.
    None when the support is not one cycle with its removed edges in cur."""
    nbr: dict[int, list[int]] = {}
    for u, v in step.removed + step.added:
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    if any(len(x) != 2 for x in nbr.values()):
        return None
    rem = set(step.removed)
    for u, v in rem:
        if cur[u] != v:
            return None
    start = min(nbr)
    heads = [w for w in nbr[start] if _edge(start, w) in rem]
    if not heads:
        return None
    seq = [start, min(heads)]
    prev, v = start, seq[1]
    while True:
        a, b = nbr[v]
        nxt = b if a == prev else a
        if nxt == start:
            break
        seq.append(nxt)
        prev, v = v, nxt
    if len(seq) != len(nbr):
        return None
    for i in range(0, len(seq), 2):
        if _edge(seq[i], seq[i + 1]) not in rem:
            return None
    return seq


def _relabelings(vs):
    """Traversals of an even cycle that keep matched edges in odd positions:
    even rotations of the forward and of the reversed orientation."""
    m = len(vs)
    rev = vs[::-1]
    for base in (vs, rev):
        for s in range(0, m, 2):
            yield base[s:] + base[:s]


def _shared_pairs(cur, support):
    """Matched pairs of ``cur`` disjoint from the support cycle, both
    orientations, in canonical order."""
    block = set(support)
    for a in range(len(cur)):
        b = cur[a]
        if b <= a or a in block or b in block:
            continue
        yield a, b
        yield b, a


def _even_chord_split(G, cur, vs):
    """Two switches across an even chord of the support cycle, or None.

    The first switch runs over the arc whose end edges lie in ``cur`` plus
    the chord; the second over the complementary arc.
    """
    m = len(vs)
    for i in range(m):
        j = (i + 3) % m
        if not G.has_edge(vs[i], vs[j]):
            continue
        short = [vs[(i + t) % m] for t in range(4)]
        long_ = [vs[(j + t) % m] for t in range(m - 2)]
        first, second = (short, long_) if i % 2 == 0 else (long_, short)
        work = list(cur)
        s1 = _step_from(G, work, first)
        _apply(work, s1.removed, s1.added)
        s2 = _step_from(G, work, second)
        return [s1, s2]
    return None


def _refine8(G, cur, step):
    """refine_4_to_3 on a partner array; see the public wrapper."""
    vs = _support_cycle(cur, step)
    if vs is None or len(vs) != 8:
        raise PatternNotFound("step support is not a single 8-cycle; the "
                              "refinement covers single-cycle switches only")
    split = _even_chord_split(G, cur, vs)
    if split is not None:
        return split
    for ws in _relabelings(vs):
        u1, u2, u6 = ws[0], ws[1], ws[5]
        for x, y in _shared_pairs(cur, vs):
            if G.has_edge(y, u1) and G.has_edge(x, u2) and G.has_edge(x, u6):
                work = list(cur)
                out = []
                for cyc in ([u1, u2, x, y],
                            [x, u2, ws[2], ws[3], ws[4], u6],
                            [x, u6, ws[6], ws[7], u1, y]):
                    s = _step_from(G, work, cyc)
                    _apply(work, s.removed, s.added)
                    out.append(s)
                return out
    raise PatternNotFound("no even chord and no 3-switch pattern edge")


def _refine6(G, cur, step):
    """refine_3_to_2 on a partner array; see the public wrapper."""
    vs = _support_cycle(cur, step)
    if vs is None or len(vs) != 6:
        raise PatternNotFound("step support is not a single 6-cycle; the "
                              "refinement covers single-cycle switches only")
    split = _even_chord_split(G, cur, vs)
    if split is not None:
        return split
    for ws in _relabelings(vs):
        u1, u2, u3, u4, u5, u6 = ws
        for x, y in _shared_pairs(cur, vs):
            if G.has_edge(x, u1) and G.has_edge(x, u5) and \
               G.has_edge(y, u2) and G.has_edge(y, u4):
                work = list(cur)
                out = []
                for cyc in ([u1, u2, y, x], [y, u2, u3, u4],
                            [u1, x, u5, u6], [y, u4, u5, x]):
                    s = _step_from(G, work, cyc)
                    _apply(work, s.removed, s.added)
                    out.append(s)
                return out
    raise PatternNotFound("no even chord and no 2-switch pattern edge")


def refine_4_to_3(G: Graph, M: Matching, step: SwitchStep) -> list[SwitchStep]:
    """Replace one 8-cycle 4-switch by at most three 3-switches.

    An even chord splits the 8-cycle into a 4-cycle and a 6-cycle (two
    switches). Otherwise a matched pair xy away from the cycle with
    y ~ u_1, x ~ u_2, x ~ u_6 (searched over all relabelings of the cycle)
    yields the three-switch sequence through xy. Steps with 4- or 6-cycle
    support pass through unchanged.
    """
    if step.size_class <= 3:
        return [step]
    return _refine8(G, _partners(M), step)


def refine_3_to_2(G: Graph, M: Matching, step: SwitchStep) -> list[SwitchStep]:
    """Replace one 6-cycle 3-switch by at most four 2-switches.

    An even chord splits the 6-cycle into two 4-cycles (two switches);
    otherwise a matched pair xy with x ~ u_1,u_5 and y ~ u_2,u_4 yields the
    four-switch sequence. 4-cycle steps pass through unchanged.
    """
    if step.size_class <= 2:
        return [step]
    return _refine6(G, _partners(M), step)


def k_switch_path(G: Graph, M: Matching, M_prime: Matching, k: int,
                  gamma=None) -> ReconfigPath:
    """Path using only j-switches with j <= k, for k in {2,3,4}.

    Builds the 4-switch path, then refines every 4-switch into 3-switches
    and, for k = 2, every 3-switch into 2-switches.
    """
    if k not in (2, 3, 4):
        raise ValueError("k must be 2, 3 or 4")
    base = four_switch_path(G, M, M_prime, gamma=gamma)
    if k == 4:
        return base
    steps = list(base.steps)
    for bound, refine in ((3, _refine8), (2, _refine6)):
        cur = _partners(M)
        out = []
        for step in steps:
            if step.size_class <= bound:
                out.append(step)
            else:
                out.extend(refine(G, cur, step))
            _apply(cur, step.removed, step.added)
        steps = out
        if bound == k:
            break
    return ReconfigPath(M, M_prime, tuple(steps), k)


def _partner_edges(p):
    return tuple(sorted((v, w) for v, w in enumerate(p) if 0 <= v < w))


def apply_step(G: Graph, M: Matching, step: SwitchStep) -> Matching:
    p = _partners(M)
    _apply(p, step.removed, step.added)
    return Matching(G, _partner_edges(p), _trusted=True)


def validate_path(G: Graph, path: ReconfigPath, k: int):
    """Replay a path and check it move by move.

    Returns (True, None) or (False, reason) with the first violation found:
    matching validity, size preservation, j <= k, and endpoint equality.
    """
    p = _partners(path.start)
    size = path.start.size
    for t, step in enumerate(path.steps):
        if len(step.removed) != len(step.added):
            return False, f"step {t}: removed/added sizes differ"
        if set(step.removed) & set(step.added):
            return False, f"step {t}: removed and added overlap"
        if step.size_class > k:
            return False, f"step {t}: j={step.size_class} exceeds k={k}"
        for u, v in step.removed:
            if p[u] != v:
                return False, f"step {t}: removed edge ({u},{v}) absent"
        for u, v in step.added:
            if not G.has_edge(u, v):
                return False, f"step {t}: added pair ({u},{v}) is a non-edge"
        for u, v in step.removed:
            p[u] = p[v] = -1
        for u, v in step.added:
            if p[u] != -1 or p[v] != -1:
                return False, f"step {t}: added edge ({u},{v}) collides"
            p[u] = v
            p[v] = u
        if sum(1 for x in p if x >= 0) != 2 * size:
            return False, f"step {t}: matching size changed"
    if _partner_edges(p) != path.end.edges:
        return False, "EndpointMismatch: replay does not reach the stated end"
    return True, None
