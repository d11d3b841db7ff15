"""Maximal balanced clique enumeration (six-set branch and bound)."""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graph import BalancedClique, SignedGraph, degeneracy
from .reduction import reduce_for_enumeration
from .state import LEFT, RIGHT, SearchState, rank_of, root_state

Sink = Callable[[BalancedClique], None]


class Verdict(enum.Enum):
    CONTINUE = "continue"
    PRUNE = "prune"
    EMIT = "emit"


class SearchTimeout(RuntimeError):
    """Raised from inside a search when its time budget runs out."""


class SearchStats:
    """Counts recursive frame invocations and enforces an optional deadline."""

    def __init__(self, time_budget: float = 0.0):
        self.frames = 0
        self.deadline = time.monotonic() + time_budget if time_budget > 0 else None

    def tick(self) -> None:
        self.frames += 1
        if self.deadline is not None and self.frames & 0x3FF == 0:
            if time.monotonic() > self.deadline:
                raise SearchTimeout(f"time budget exhausted after {self.frames} frames")


@dataclass(frozen=True)
class EnumOptions:
    pivot: bool = True
    early_termination: bool = True
    order_by_degree: bool = True
    root_order: str = "degeneracy"


BASIC = EnumOptions(pivot=False, early_termination=False, order_by_degree=False)
STAR = EnumOptions()


def local_degree(v: int, state: SearchState, g: SignedGraph) -> int:
    """Candidates that could join a clique together with ``v``."""
    side = state.side_of(v)
    if side is None:
        raise ValueError(f"vertex {v} is not a candidate or excluded vertex")
    if side == LEFT:
        return len(g.pos[v] & state.pl) + len(g.neg[v] & state.pr)
    return len(g.neg[v] & state.pl) + len(g.pos[v] & state.pr)


def compatible(g: SignedGraph, v: int, side: str) -> tuple[frozenset, frozenset]:
    """Neighbours of ``v`` usable on (left, right) when ``v`` sits on ``side``."""
    if side == LEFT:
        return g.pos[v], g.neg[v]
    return g.neg[v], g.pos[v]


def choose_pivot(state: SearchState, g: SignedGraph, degree: dict[int, int] | None = None) -> int:
    pool = state.pl | state.pr | state.ql | state.qr
    if not pool:
        raise ValueError("cannot choose a pivot from empty candidate and excluded sets")
    if degree is None:
        degree = {v: local_degree(v, state, g) for v in pool}
    return min(pool, key=lambda v: (-degree[v], v))


def pivot_branches(state: SearchState, g: SignedGraph, p: int) -> tuple[set[int], set[int]]:
    """Candidates left to branch on once neighbours compatible with ``p`` are skipped."""
    use_l, use_r = compatible(g, p, state.side_of(p))
    return state.pl - use_l, state.pr - use_r


def early_termination(
    state: SearchState, g: SignedGraph, k: int, degree: dict[int, int] | None = None
) -> Verdict:
    if len(state.cl) + len(state.pl) < k or len(state.cr) + len(state.pr) < k:
        return Verdict.PRUNE
    if degree is None:
        pool = state.pl | state.pr | state.ql | state.qr
        degree = {v: local_degree(v, state, g) for v in pool}
    n_cand = len(state.pl) + len(state.pr)
    # an excluded vertex compatible with every candidate: everything below was already seen
    for q in state.ql | state.qr:
        if degree[q] == n_cand:
            return Verdict.PRUNE
    # candidates already form a balanced clique: the union is the only maximal result
    if all(degree[p] == n_cand - 1 for p in state.pl | state.pr):
        return Verdict.EMIT
    return Verdict.CONTINUE


class SetNeighborhood:
    """Plain set-intersection backend for local neighbourhood queries."""

    def __init__(self, g: SignedGraph):
        self.g = g

    def start_root(self, state: SearchState) -> None:
        pass

    def end_root(self) -> None:
        pass

    def local_degree(self, state: SearchState, v: int, side: str) -> int:
        use_l, use_r = compatible(self.g, v, side)
        return len(use_l & state.pl) + len(use_r & state.pr)

    def branch(self, state: SearchState, v: int, side: str) -> SearchState:
        use_l, use_r = compatible(self.g, v, side)
        cl, cr = set(state.cl), set(state.cr)
        (cl if side == LEFT else cr).add(v)
        return SearchState(
            cl, cr,
            state.pl & use_l, state.pr & use_r,
            state.ql & use_l, state.qr & use_r,
            state.depth + 1,
        )

    def unbranch(self, state: SearchState, v: int, side: str) -> None:
        pass


FrameHook = Callable[[SearchState, object], None]


class Enumerator:
    def __init__(
        self,
        g: SignedGraph,
        k: int,
        sink: Sink,
        options: EnumOptions = STAR,
        stats: SearchStats | None = None,
        backend=None,
        frame_hook: FrameHook | None = None,
    ):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.g = g
        self.k = k
        self.sink = sink
        self.opts = options
        self.stats = stats if stats is not None else SearchStats()
        self.nb = backend if backend is not None else SetNeighborhood(g)
        self.frame_hook = frame_hook
        self.count = 0

    def root_order(self) -> Sequence[int]:
        if self.opts.root_order == "id":
            return range(self.g.n)
        return degeneracy(self.g, "all_edges").order

    def run(self, roots: Iterable[int] | None = None) -> int:
        order = self.root_order()
        rank = rank_of(order)
        for v in order if roots is None else roots:
            st = root_state(self.g, v, rank)
            self.nb.start_root(st)
            self.expand(st)
            self.nb.end_root()
        return self.count

    def emit(self, cl: Iterable[int], cr: Iterable[int]) -> None:
        self.count += 1
        self.sink(BalancedClique(frozenset(cl), frozenset(cr)))

    def expand(self, st: SearchState) -> None:
        self.stats.tick()
        if self.frame_hook is not None:
            self.frame_hook(st, self.nb)
        k, opts, nb = self.k, self.opts, self.nb
        pl, pr, ql, qr = st.pl, st.pr, st.ql, st.qr

        degree = None
        if opts.early_termination:
            if len(st.cl) + len(pl) < k or len(st.cr) + len(pr) < k:
                return
            degree = {v: nb.local_degree(st, v, LEFT) for v in pl | ql}
            degree.update((v, nb.local_degree(st, v, RIGHT)) for v in pr | qr)
            verdict = early_termination(st, self.g, k, degree)
            if verdict is Verdict.PRUNE:
                return
            if verdict is Verdict.EMIT:
                self.emit(st.cl | pl, st.cr | pr)
                return
        elif not (pl or pr or ql or qr):
            if len(st.cl) >= k and len(st.cr) >= k:
                self.emit(st.cl, st.cr)
            return
        if not pl and not pr:
            return

        if degree is None and (opts.pivot or opts.order_by_degree):
            degree = {v: nb.local_degree(st, v, LEFT) for v in pl | ql}
            degree.update((v, nb.local_degree(st, v, RIGHT)) for v in pr | qr)
        if opts.pivot:
            p = choose_pivot(st, self.g, degree)
            new_l, new_r = pivot_branches(st, self.g, p)
        else:
            new_l, new_r = pl, pr

        if opts.order_by_degree:
            key = lambda v: (degree[v], v)  # noqa: E731
        else:
            key = None
        plan = [(LEFT, sorted(new_l, key=key)), (RIGHT, sorted(new_r, key=key))]
        if not st.left_first:
            plan.reverse()
        for side, cands in plan:
            p_side, q_side = st.p(side), st.q(side)
            for v in cands:
                child = nb.branch(st, v, side)
                self.expand(child)
                nb.unbranch(st, v, side)
                p_side.discard(v)
                q_side.add(v)


def enumerate_cliques(
    g: SignedGraph,
    k: int,
    sink: Sink,
    options: EnumOptions = STAR,
    *,
    reduce: bool = False,
    stats: SearchStats | None = None,
    backend: str = "naive",
    frame_hook: FrameHook | None = None,
) -> int:
    """Drive one enumeration run; returns the number of emitted cliques."""
    if reduce:
        g = reduce_for_enumeration(g, k)
    if backend == "naive":
        nb = SetNeighborhood(g)
    elif backend == "partitioned":
        from .partition_store import StoreNeighborhood

        nb = StoreNeighborhood(g)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return Enumerator(g, k, sink, options, stats, nb, frame_hook).run()


def mbc_enum(g: SignedGraph, k: int, sink: Sink, **kw) -> int:
    """Plain six-set enumeration: no pivoting, no early termination."""
    return enumerate_cliques(g, k, sink, BASIC, **kw)


def mbc_enum_star(g: SignedGraph, k: int, sink: Sink, **kw) -> int:
    """Enumeration with pivoting, local-degree candidate order and ET rules 1-3."""
    return enumerate_cliques(g, k, sink, STAR, **kw)


def collect(g: SignedGraph, k: int, options: EnumOptions = STAR, **kw) -> list[BalancedClique]:
    out: list[BalancedClique] = []
    enumerate_cliques(g, k, out.append, options, **kw)
    return out


def _worker(args) -> tuple[list[BalancedClique], int]:
    g, k, options, roots = args
    out: list[BalancedClique] = []
    stats = SearchStats()
    Enumerator(g, k, out.append, options, stats).run(roots)
    return out, stats.frames


def enumerate_parallel(
    g: SignedGraph,
    k: int,
    sink: Sink,
    options: EnumOptions = STAR,
    threads: int = 2,
    *,
    reduce: bool = False,
    stats: SearchStats | None = None,
) -> int:
    """Split the root loop into contiguous chunks run by worker processes.

    Chunks are emitted in root order, so the output sequence matches a
    single-worker run exactly.
    """
    if reduce:
        g = reduce_for_enumeration(g, k)
    order = list(Enumerator(g, k, sink, options).root_order())
    size = max(1, -(-len(order) // threads))
    chunks = [(g, k, options, order[i:i + size]) for i in range(0, len(order), size)]
    count = 0
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for cliques, frames in pool.map(_worker, chunks):
            if stats is not None:
                stats.frames += frames
            for c in cliques:
                sink(c)
            count += len(cliques)
    return count
