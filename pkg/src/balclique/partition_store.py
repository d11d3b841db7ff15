"""Partitioned adjacency lists with an undo log.

For every vertex ``v`` and sign, the neighbour list is kept in four
contiguous segments ``[C | P | Q | X]``. A neighbour ``u`` lands in the
C, P or Q segment when its tag says so *and* its side is compatible with
``v`` under that sign (same side for positive edges, opposite side for
negative ones); everything else, including untagged vertices, sits in X.
Segment lengths therefore are the local counters, and the candidate
segments of ``v`` are exactly the candidate sets of the child frame that
adds ``v`` to the clique.

Every swap, boundary shift and tag change is logged, so ``restore`` puts
the arrays back exactly as they were at a ``mark``.
"""

from __future__ import annotations

from typing import NamedTuple

from .graph import SignedGraph
from .state import LEFT, RIGHT, SearchState

C, P, Q, X = 0, 1, 2, 3
SIGNS = (0, 1)  # index 0: positive lists, 1: negative lists

TAGS = {
    "CL": (C, LEFT), "CR": (C, RIGHT),
    "PL": (P, LEFT), "PR": (P, RIGHT),
    "QL": (Q, LEFT), "QR": (Q, RIGHT),
}


class StoreCorruption(RuntimeError):
    pass


class SegmentCounts(NamedTuple):
    c_pos: int
    p_pos: int
    q_pos: int
    c_neg: int
    p_neg: int
    q_neg: int


def _tag_side(tag: str | None) -> str | None:
    return None if tag is None else TAGS[tag][1]


def _classify(tag: str | None, side_v: str | None, sign: int) -> int:
    if tag is None or side_v is None:
        return X
    kind, side_u = TAGS[tag]
    if (side_u == side_v) == (sign == 0):
        return kind
    return X


class PartitionedAdjacency:
    def __init__(self, g: SignedGraph):
        self.g = g
        self.tag: list[str | None] = [None] * g.n
        # lists[s][v] is the neighbour array; ends[s][v][i] is one past segment i
        self.lists = [[list(g.pos_adj[v]) for v in range(g.n)],
                      [list(g.neg_adj[v]) for v in range(g.n)]]
        self.index = [
            [{u: i for i, u in enumerate(self.lists[s][v])} for v in range(g.n)]
            for s in SIGNS
        ]
        self.ends = [[[0, 0, 0, len(self.lists[s][v])] for v in range(g.n)] for s in SIGNS]
        self.log: list[tuple] = []

    @classmethod
    def build(cls, g: SignedGraph, state: SearchState | None = None) -> "PartitionedAdjacency":
        store = cls(g)
        if state is not None:
            store.load(state)
            store.log.clear()
        return store

    def load(self, state: SearchState) -> None:
        for name, members in (("CL", state.cl), ("CR", state.cr), ("PL", state.pl),
                              ("PR", state.pr), ("QL", state.ql), ("QR", state.qr)):
            for v in sorted(members):
                self.retag(v, name)

    # ----- primitive, logged operations -----

    def _swap(self, s: int, v: int, i: int, j: int) -> None:
        if i == j:
            return
        arr, idx = self.lists[s][v], self.index[s][v]
        a, b = arr[i], arr[j]
        arr[i], arr[j] = b, a
        idx[a], idx[b] = j, i
        self.log.append(("swap", s, v, i, j))

    def _shift(self, s: int, v: int, seg: int, delta: int) -> None:
        self.ends[s][v][seg] += delta
        self.log.append(("end", s, v, seg, delta))

    def _set_tag(self, u: int, tag: str | None) -> None:
        self.log.append(("tag", u, self.tag[u]))
        self.tag[u] = tag

    def _segment_of(self, s: int, v: int, pos: int) -> int:
        ends = self.ends[s][v]
        for seg in (C, P, Q):
            if pos < ends[seg]:
                return seg
        return X

    def _move(self, s: int, v: int, u: int, target: int) -> None:
        """Walk ``u`` segment by segment inside ``v``'s sign-``s`` list."""
        ends = self.ends[s][v]
        seg = self._segment_of(s, v, self.index[s][v][u])
        while seg < target:
            # swap with the last element of the current segment, then shrink it
            self._swap(s, v, self.index[s][v][u], ends[seg] - 1)
            self._shift(s, v, seg, -1)
            seg += 1
        while seg > target:
            # swap with the first element of the current segment, then grow the previous one
            start = ends[seg - 1]
            self._swap(s, v, self.index[s][v][u], start)
            self._shift(s, v, seg - 1, +1)
            seg -= 1

    # ----- public operations -----

    def retag(self, u: int, tag: str | None) -> None:
        if tag is not None and tag not in TAGS:
            raise ValueError(f"unknown tag {tag!r}")
        old = self.tag[u]
        if old == tag:
            return
        self._set_tag(u, tag)
        for s in SIGNS:
            adj = self.g.pos_adj[u] if s == 0 else self.g.neg_adj[u]
            for v in adj:
                side_v = _tag_side(self.tag[v])
                before, after = _classify(old, side_v, s), _classify(tag, side_v, s)
                if before != after:
                    self._move(s, v, u, after)
        old_side, new_side = _tag_side(old), _tag_side(tag)
        if old_side != new_side:
            # u's own lists classify neighbours relative to u's side
            for s in SIGNS:
                for w in list(self.lists[s][u]):
                    target = _classify(self.tag[w], new_side, s)
                    if target != _classify(self.tag[w], old_side, s):
                        self._move(s, u, w, target)

    def _require(self, v: int, kind: str, side: str | None) -> str:
        tag = self.tag[v]
        allowed = (kind + LEFT, kind + RIGHT) if side is None else (kind + side,)
        if tag not in allowed:
            raise ValueError(f"vertex {v} is tagged {tag}, expected one of {allowed}")
        return tag[1]

    def move_candidate_to_clique(self, v: int, side: str | None = None) -> None:
        self.retag(v, "C" + self._require(v, "P", side))

    def move_clique_to_excluded(self, v: int, side: str | None = None) -> None:
        self.retag(v, "Q" + self._require(v, "C", side))

    def mark(self) -> int:
        return len(self.log)

    def restore(self, mark: int) -> None:
        if not 0 <= mark <= len(self.log):
            raise StoreCorruption(f"mark {mark} outside log of length {len(self.log)}")
        log = self.log
        while len(log) > mark:
            entry = log.pop()
            if entry[0] == "swap":
                _, s, v, i, j = entry
                arr, idx = self.lists[s][v], self.index[s][v]
                a, b = arr[i], arr[j]
                arr[i], arr[j] = b, a
                idx[a], idx[b] = j, i
            elif entry[0] == "end":
                _, s, v, seg, delta = entry
                self.ends[s][v][seg] -= delta
            else:
                _, u, old = entry
                self.tag[u] = old

    restore_frame = restore

    def segment(self, v: int, sign: int, seg: int) -> list[int]:
        ends = self.ends[sign][v]
        start = ends[seg - 1] if seg > 0 else 0
        return self.lists[sign][v][start:ends[seg]]

    def segment_counts(self, v: int) -> SegmentCounts:
        out = []
        for s in SIGNS:
            e = self.ends[s][v]
            out += [e[C], e[P] - e[C], e[Q] - e[P]]
        return SegmentCounts(*out)

    def local_degree(self, v: int) -> int:
        c = self.segment_counts(v)
        return c.p_pos + c.p_neg

    def snapshot(self) -> tuple:
        return (
            tuple(self.tag),
            tuple(tuple(tuple(a) for a in per) for per in self.lists),
            tuple(tuple(tuple(e) for e in per) for per in self.ends),
        )

    def check(self) -> None:
        """Raise StoreCorruption unless every list matches the tags."""
        for s in SIGNS:
            for v in range(self.g.n):
                side_v = _tag_side(self.tag[v])
                for pos, u in enumerate(self.lists[s][v]):
                    if self.index[s][v][u] != pos:
                        raise StoreCorruption(f"index of {u} in list of {v} is stale")
                    want = _classify(self.tag[u], side_v, s)
                    if self._segment_of(s, v, pos) != want:
                        raise StoreCorruption(f"{u} in wrong segment of {v} (sign {s})")


class StoreNeighborhood:
    """Enumeration backend reading child frames off the partitioned lists."""

    def __init__(self, g: SignedGraph):
        self.g = g
        self.store = PartitionedAdjacency(g)
        self.roots: list[int] = []
        self.frames: list[int] = []

    def start_root(self, state: SearchState) -> None:
        self.roots.append(self.store.mark())
        self.store.load(state)

    def end_root(self) -> None:
        self.store.restore(self.roots.pop())

    def local_degree(self, state: SearchState, v: int, side: str) -> int:
        return self.store.local_degree(v)

    def branch(self, state: SearchState, v: int, side: str) -> SearchState:
        st = self.store
        same, opp = (0, 1) if side == LEFT else (1, 0)
        pl, pr = set(st.segment(v, same, P)), set(st.segment(v, opp, P))
        ql, qr = set(st.segment(v, same, Q)), set(st.segment(v, opp, Q))
        cl, cr = set(state.cl), set(state.cr)
        (cl if side == LEFT else cr).add(v)
        st.move_candidate_to_clique(v)
        self.frames.append(st.mark())
        keep = pl | pr | ql | qr
        for u in sorted((state.pl | state.pr | state.ql | state.qr) - keep - {v}):
            st.retag(u, None)
        return SearchState(cl, cr, pl, pr, ql, qr, state.depth + 1)

    def unbranch(self, state: SearchState, v: int, side: str) -> None:
        self.store.restore(self.frames.pop())
        self.store.move_clique_to_excluded(v)
