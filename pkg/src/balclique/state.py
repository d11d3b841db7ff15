"""Branch-and-bound frame state shared by enumeration, search and reductions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import SignedGraph

LEFT = "L"
RIGHT = "R"


def other(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


@dataclass
class SearchState:
    """The six vertex sets of one search frame.

    ``cl``/``cr`` are the clique sides, ``pl``/``pr`` the candidates and
    ``ql``/``qr`` the already-processed (excluded) vertices.
    """

    cl: set[int] = field(default_factory=set)
    cr: set[int] = field(default_factory=set)
    pl: set[int] = field(default_factory=set)
    pr: set[int] = field(default_factory=set)
    ql: set[int] = field(default_factory=set)
    qr: set[int] = field(default_factory=set)
    depth: int = 0

    def c(self, side: str) -> set[int]:
        return self.cl if side == LEFT else self.cr

    def p(self, side: str) -> set[int]:
        return self.pl if side == LEFT else self.pr

    def q(self, side: str) -> set[int]:
        return self.ql if side == LEFT else self.qr

    def side_of(self, v: int) -> str | None:
        """Side of ``v`` among the candidate/excluded sets, or None."""
        if v in self.pl or v in self.ql:
            return LEFT
        if v in self.pr or v in self.qr:
            return RIGHT
        return None

    @property
    def left_first(self) -> bool:
        # Flag starts true and is flipped on entry, so the root frame runs R first
        return self.depth % 2 == 1

    def copy(self) -> "SearchState":
        return SearchState(
            set(self.cl), set(self.cr), set(self.pl), set(self.pr),
            set(self.ql), set(self.qr), self.depth,
        )

    def check(self, g: SignedGraph) -> None:
        """Raise AssertionError if any frame invariant is violated."""
        sets = [self.cl, self.cr, self.pl, self.pr, self.ql, self.qr]
        total = sum(len(s) for s in sets)
        assert len(set().union(*sets)) == total, "sets are not pairwise disjoint"
        for side in (LEFT, RIGHT):
            c_same, c_other = self.c(side), self.c(other(side))
            for v in self.p(side) | self.q(side) | c_same:
                assert (c_same - {v}) <= g.pos[v], f"{v} not positive to C_{side}"
                assert c_other <= g.neg[v], f"{v} not negative to opposite C"


def root_state(g: SignedGraph, v: int, rank: Sequence[int]) -> SearchState:
    """Seed ``C_L = {v}``; later vertices (by ``rank``) become candidates."""
    r = rank[v]
    pl = {u for u in g.pos_adj[v] if rank[u] > r}
    pr = {u for u in g.neg_adj[v] if rank[u] > r}
    ql = {u for u in g.pos_adj[v] if rank[u] < r}
    qr = {u for u in g.neg_adj[v] if rank[u] < r}
    return SearchState({v}, set(), pl, pr, ql, qr, 0)


def rank_of(order: Sequence[int]) -> list[int]:
    rank = [0] * len(order)
    for i, v in enumerate(order):
        rank[v] = i
    return rank
