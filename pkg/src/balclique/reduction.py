"""Vertex and edge peeling that shrink a signed graph before searching it.

All reductions keep the vertex id space of their input: removed vertices
simply lose their edges, so cliques found on the output can be compared
with cliques found on the input directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

from .graph import NEGATIVE, POSITIVE, SignedGraph
from .state import LEFT, RIGHT, SearchState


@dataclass
class EdgeCommonNeighborCounts:
    """Common-neighbour counts per edge, keyed by ``(u, v)`` with ``u < v``.

    Positive edges map to ``(delta_pp, delta_mm)``. Negative edges map to
    ``(delta_pm, delta_mp)`` where ``delta_pm = |N+(u) & N-(v)|`` for the
    smaller endpoint ``u``.
    """

    positive: dict[tuple[int, int], tuple[int, int]]
    negative: dict[tuple[int, int], tuple[int, int]]

    def get(self, u: int, v: int) -> tuple[int, int]:
        """Counts for the edge oriented as given (swaps the negative pair if needed)."""
        a, b = (u, v) if u < v else (v, u)
        if (a, b) in self.positive:
            return self.positive[(a, b)]
        pm, mp = self.negative[(a, b)]
        return (pm, mp) if u < v else (mp, pm)


def vertex_reduction(g: SignedGraph, k: int) -> SignedGraph:
    """(k-1, k)-signed core: peel vertices with d+ < k-1 or d- < k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    dpos = [len(a) for a in g.pos_adj]
    dneg = [len(a) for a in g.neg_adj]
    alive = [True] * g.n
    queue = deque(v for v in range(g.n) if dpos[v] < k - 1 or dneg[v] < k)
    for v in queue:
        alive[v] = False
    while queue:
        v = queue.popleft()
        for u in g.pos_adj[v]:
            if alive[u]:
                dpos[u] -= 1
                if dpos[u] < k - 1:
                    alive[u] = False
                    queue.append(u)
        for u in g.neg_adj[v]:
            if alive[u]:
                dneg[u] -= 1
                if dneg[u] < k:
                    alive[u] = False
                    queue.append(u)
    if all(alive):
        return g
    return g.induced(v for v in range(g.n) if alive[v])


def edge_common_neighbor_counts(g: SignedGraph) -> EdgeCommonNeighborCounts:
    positive = {}
    negative = {}
    pos, neg = g.pos, g.neg
    for u, v, s in g.edges():
        if s == POSITIVE:
            positive[(u, v)] = (len(pos[u] & pos[v]), len(neg[u] & neg[v]))
        else:
            negative[(u, v)] = (len(pos[u] & neg[v]), len(neg[u] & pos[v]))
    return EdgeCommonNeighborCounts(positive, negative)


KeepRule = Callable[[int, int, int], bool]


def _peel_edges(g: SignedGraph, keep: KeepRule) -> SignedGraph:
    """Delete edges failing ``keep(sign, c1, c2)`` until a fixpoint.

    ``c1, c2`` are ``(delta_pp, delta_mm)`` for positive edges and
    ``(delta_pm, delta_mp)`` (smaller endpoint first) for negative ones.
    Counts are maintained incrementally: removing ``(u, v)`` only touches
    the edges of triangles through ``(u, v)``.
    """
    pos = [set(a) for a in g.pos]
    neg = [set(a) for a in g.neg]
    initial = edge_common_neighbor_counts(g)
    counts = {key: list(c) for key, c in initial.positive.items()}
    counts.update((key, list(c)) for key, c in initial.negative.items())

    def sign_of(a: int, b: int) -> int:
        if b in pos[a]:
            return POSITIVE
        if b in neg[a]:
            return NEGATIVE
        return 0

    def violates(a: int, b: int) -> bool:
        c = counts[(a, b)]
        return not keep(sign_of(a, b), c[0], c[1])

    queue = deque(key for key in counts if violates(*key))
    queued = set(queue)
    removed = []
    while queue:
        u, v = queue.popleft()
        queued.discard((u, v))
        s = sign_of(u, v)
        if s == 0 or not violates(u, v):
            continue
        if s == POSITIVE:
            pos[u].discard(v)
            pos[v].discard(u)
        else:
            neg[u].discard(v)
            neg[v].discard(u)
        del counts[(u, v)]
        removed.append((u, v))
        # each remaining triangle (u, v, w) loses its contribution to (u, w) and (v, w)
        for w in (pos[u] | neg[u]) & (pos[v] | neg[v]):
            for a, b in ((u, v), (v, u)):
                # edge (a, w) loses common neighbour b
                s_aw = sign_of(a, w)
                x, y = (a, w) if a < w else (w, a)
                c = counts[(x, y)]
                sa, sw = s, sign_of(w, b)  # sign(a,b) and sign(w,b)
                slot = _slot(s_aw, sa if x == a else sw, sw if x == a else sa)
                if slot is None:
                    continue
                c[slot] -= 1
                if (x, y) not in queued and not keep(s_aw, c[0], c[1]):
                    queued.add((x, y))
                    queue.append((x, y))
    if not removed:
        return g
    return g.with_edges(
        [(u, v) for u in range(g.n) for v in pos[u] if u < v],
        [(u, v) for u in range(g.n) for v in neg[u] if u < v],
    )


def _slot(edge_sign: int, s_x: int, s_y: int) -> int | None:
    """Which count of edge (x, y) a common neighbour with signs (s_x, s_y) feeds."""
    if edge_sign == POSITIVE:
        if s_x == POSITIVE and s_y == POSITIVE:
            return 0
        if s_x == NEGATIVE and s_y == NEGATIVE:
            return 1
        return None
    if s_x == POSITIVE and s_y == NEGATIVE:
        return 0
    if s_x == NEGATIVE and s_y == POSITIVE:
        return 1
    return None


def edge_reduction(g: SignedGraph, k: int) -> SignedGraph:
    """Peel positive edges with d++ < k-2 or d-- < k, negative with d+- or d-+ < k-1."""
    if k < 1:
        raise ValueError("k must be >= 1")

    def keep(sign: int, c1: int, c2: int) -> bool:
        if sign == POSITIVE:
            return c1 >= k - 2 and c2 >= k
        return c1 >= k - 1 and c2 >= k - 1

    return _peel_edges(g, keep)


def edge_reduction_plus(g: SignedGraph, kappa_lo: int, kappa_hi: int) -> SignedGraph:
    """Edge peeling bounded by a search region's side-size lower bounds."""
    if kappa_lo > kappa_hi:
        raise ValueError("kappa_lo must not exceed kappa_hi")

    def keep(sign: int, c1: int, c2: int) -> bool:
        a, b = (c1 + 2, c2) if sign == POSITIVE else (c1 + 1, c2 + 1)
        return min(a, b) >= kappa_lo and max(a, b) >= kappa_hi

    return _peel_edges(g, keep)


def reduce_for_enumeration(g: SignedGraph, k: int) -> SignedGraph:
    """Alternate vertex and edge reduction until neither removes anything."""
    while True:
        h = edge_reduction(vertex_reduction(g, k), k)
        if h.m == g.m:
            return h
        g = h


def vertex_reduction_plus(
    state: SearchState,
    g: SignedGraph,
    epsilon: int,
    kappa_lo: int,
    kappa_hi: int,
) -> tuple[set[int], set[int]]:
    """Prune candidates whose degree bound cannot reach the region or beat ``epsilon``.

    Works on the signed subgraph induced by ``P_L | P_R``. Returns the new
    ``(P_L, P_R)``; the state itself is not modified and Q sets are never
    touched.
    """
    pl, pr = set(state.pl), set(state.pr)
    if not pl and not pr:
        return pl, pr
    members = pl | pr
    dpos = {v: len(g.pos[v] & members) for v in members}
    dneg = {v: len(g.neg[v] & members) for v in members}
    size = {LEFT: (len(state.cl), len(state.cr)), RIGHT: (len(state.cr), len(state.cl))}

    def fails(v: int, side: str) -> bool:
        c_same, c_opp = size[side]
        a = dpos[v] + 1 + c_same
        b = dneg[v] + c_opp
        return min(a, b) < kappa_lo or max(a, b) < kappa_hi or a + b <= epsilon

    queue = deque()
    for side, cand in ((LEFT, pl), (RIGHT, pr)):
        for v in sorted(cand):
            if fails(v, side):
                queue.append(v)
    gone = set(queue)
    while queue:
        v = queue.popleft()
        members.discard(v)
        pl.discard(v)
        pr.discard(v)
        for u in g.pos[v] & members:
            dpos[u] -= 1
            if u not in gone and fails(u, LEFT if u in pl else RIGHT):
                gone.add(u)
                queue.append(u)
        for u in g.neg[v] & members:
            dneg[u] -= 1
            if u not in gone and fails(u, LEFT if u in pl else RIGHT):
                gone.add(u)
                queue.append(u)
    return pl, pr
