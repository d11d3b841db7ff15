"""Brute-force reference for maximal and maximum balanced cliques.

Deliberately naive: every vertex is tried on the left side, the right side or
left out, and a partial assignment is abandoned at the first pair that breaks
the balance condition. Nothing here is shared with the search algorithms.
"""

from __future__ import annotations

from .graph import BalancedClique, SignedGraph

DEFAULT_CAP = 20


class OracleTooLarge(ValueError):
    pass


def _sign(g: SignedGraph, u: int, v: int) -> int:
    if v in g.pos_adj[u]:
        return 1
    if v in g.neg_adj[u]:
        return -1
    return 0


def all_balanced_cliques(g: SignedGraph, cap: int = DEFAULT_CAP) -> list[tuple[frozenset, frozenset]]:
    """Every non-empty balanced clique, each once, with vertex 0-most on the left."""
    if g.n > cap:
        raise OracleTooLarge(f"oracle refuses n={g.n} > cap={cap}")
    found = []
    left: list[int] = []
    right: list[int] = []

    def fits(v: int, same: list[int], opposite: list[int]) -> bool:
        return all(_sign(g, v, u) == 1 for u in same) and all(
            _sign(g, v, u) == -1 for u in opposite
        )

    def walk(v: int) -> None:
        if v == g.n:
            if left:
                found.append((frozenset(left), frozenset(right)))
            return
        walk(v + 1)
        if fits(v, left, right):
            left.append(v)
            walk(v + 1)
            left.pop()
        # the first chosen vertex always goes left, so each clique appears once
        if left and fits(v, right, left):
            right.append(v)
            walk(v + 1)
            right.pop()

    walk(0)
    return found


def _extendable(g: SignedGraph, left: frozenset, right: frozenset) -> bool:
    members = left | right
    for x in range(g.n):
        if x in members:
            continue
        for same, opposite in ((left, right), (right, left)):
            if all(_sign(g, x, u) == 1 for u in same) and all(
                _sign(g, x, u) == -1 for u in opposite
            ):
                return True
    return False


def brute_enum(g: SignedGraph, k: int, cap: int = DEFAULT_CAP) -> set[BalancedClique]:
    """All maximal balanced cliques with both sides of size at least ``k``."""
    out = set()
    for left, right in all_balanced_cliques(g, cap):
        if len(left) >= k and len(right) >= k and not _extendable(g, left, right):
            out.add(BalancedClique(left, right))
    return out


def brute_max(g: SignedGraph, k: int, cap: int = DEFAULT_CAP) -> BalancedClique | None:
    cliques = brute_enum(g, k, cap)
    if not cliques:
        return None
    return min(cliques, key=lambda c: (-len(c), c.sort_key()))
