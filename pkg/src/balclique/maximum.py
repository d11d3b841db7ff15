"""Maximum balanced clique search.

Three drivers share one recursion: ``mbcs_baseline`` cuts on total size
only, ``mbcs_ssp`` partitions the space into search regions bounding the
smaller and larger side, and ``mbcs_ssp_star`` adds region edge peeling,
candidate peeling, colouring bounds and pivot domination.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Callable

from .enumeration import SearchStats, choose_pivot, compatible, local_degree
from .graph import BalancedClique, SignedGraph, degeneracy
from .reduction import edge_reduction_plus, vertex_reduction_plus
from .state import LEFT, RIGHT, SearchState, rank_of, root_state

DEFAULT_SLOW_THRESHOLD = 20.0


@dataclass(frozen=True)
class SearchRegion:
    """Lower bounds on the smaller (``kappa_lo``) and larger (``kappa_hi``) side."""

    kappa_lo: int
    kappa_hi: int
    index: int = 0


@dataclass
class BestResult:
    """Best clique so far; ``epsilon`` stays at the ``2k`` sentinel until one is found."""

    k: int
    clique: BalancedClique | None = None
    epsilon: int = 0

    def __post_init__(self):
        if self.clique is None:
            self.epsilon = 2 * self.k

    @property
    def bound(self) -> int:
        """Branches whose size bound is at most this value are cut."""
        # before anything is found a (k, k) clique of size exactly 2k must still qualify
        return self.epsilon if self.clique is not None else 2 * self.k - 1

    def offer(self, cl, cr) -> bool:
        size = len(cl) + len(cr)
        if size <= self.bound:
            return False
        self.clique = BalancedClique(frozenset(cl), frozenset(cr))
        self.epsilon = size
        return True


@dataclass
class RegionTrace:
    index: int
    kappa_lo: int
    kappa_hi: int
    m_pos: int
    m_neg: int
    epsilon: int
    seconds: float

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "kappa_lo": self.kappa_lo,
            "kappa_hi": self.kappa_hi,
            "m_pos": self.m_pos,
            "m_neg": self.m_neg,
            "epsilon": self.epsilon,
            "timing": {"seconds": round(self.seconds, 6)},
        }


@dataclass
class SearchReport:
    clique: BalancedClique | None
    frames: int
    regions: list[RegionTrace] = field(default_factory=list)


def dec(kappa_hi: int, last_duration: float, slow_threshold: float) -> int:
    if last_duration > slow_threshold:
        return math.ceil(kappa_hi / 2)
    return kappa_hi - 2


def first_region(k: int, sigma: int) -> SearchRegion:
    return SearchRegion(k, max(k, sigma + 1), 0)


def next_region(
    prev: SearchRegion,
    epsilon: int,
    k: int,
    last_duration: float = 0.0,
    slow_threshold: float = DEFAULT_SLOW_THRESHOLD,
) -> SearchRegion | None:
    """Region following ``prev`` once the best size is ``epsilon``; None ends the schedule."""
    lo = max(epsilon - prev.kappa_hi, k)
    hi = max(dec(prev.kappa_hi, last_duration, slow_threshold), lo)
    if hi >= prev.kappa_hi:
        # either unchanged (already covered) or the lower bound overtook it
        return None
    return SearchRegion(lo, hi, prev.index + 1)


def greedy_color_count(members, g: SignedGraph) -> int:
    """Colours used by a greedy colouring of the positive subgraph on ``members``."""
    color: dict[int, int] = {}
    members = set(members)
    used_max = 0
    for v in sorted(members):
        taken = {color[u] for u in g.pos[v] & members if u in color}
        c = 1
        while c in taken:
            c += 1
        color[v] = c
        used_max = max(used_max, c)
    return used_max


def coloring_prune(
    state: SearchState, g: SignedGraph, epsilon: int, kappa_lo: int, kappa_hi: int
) -> bool:
    """True when the colouring bound shows the branch cannot qualify."""
    left = greedy_color_count(state.pl, g) + len(state.cl)
    right = greedy_color_count(state.pr, g) + len(state.cr)
    return (
        min(left, right) < kappa_lo
        or max(left, right) < kappa_hi
        or left + right <= epsilon
    )


class Domination(enum.Enum):
    PRUNE_BRANCH = "prune"
    RESTRICT_TO_PIVOT = "restrict"
    NO_ACTION = "none"


def domination_filter(
    pivot: int,
    pivot_location: str,
    pivot_side: str,
    new_pl: set[int],
    new_pr: set[int],
    g: SignedGraph,
) -> Domination:
    """Classify the four constant-time pivot domination cases.

    ``pivot_location`` is ``"P"`` or ``"Q"``. Survivors must sit on the
    pivot's side: swapping a vertex across sides changes side sizes, so the
    pivot only stands in for same-side survivors.
    """
    same = new_pl if pivot_side == LEFT else new_pr
    opposite = new_pr if pivot_side == LEFT else new_pl
    if opposite:
        return Domination.NO_ACTION
    survivors = set(same)
    if pivot_location == "P":
        if pivot not in survivors:
            return Domination.NO_ACTION
        survivors.discard(pivot)
        success = Domination.RESTRICT_TO_PIVOT
    else:
        success = Domination.PRUNE_BRANCH
    if len(survivors) == 1:
        return success
    if len(survivors) == 2:
        w, q = survivors
        if g.sign(w, q) == 0:
            return success
    return Domination.NO_ACTION


@dataclass(frozen=True)
class SearchOptions:
    regions: bool = False
    edge_reduction: bool = False
    vertex_reduction: bool = False
    coloring: bool = False
    pivot: bool = False
    domination: bool = False


BASELINE = SearchOptions()
SSP = SearchOptions(regions=True)
SSP_STAR = SearchOptions(True, True, True, True, True, True)


ImproveHook = Callable[[BalancedClique, SearchRegion], None]


class _RegionSearch:
    """One pass of the recursion over a (possibly reduced) graph and region."""

    def __init__(self, g, k, region, best, stats, opts, on_improve=None):
        self.g = g
        self.k = k
        self.lo = region.kappa_lo if opts.regions else k
        self.hi = region.kappa_hi if opts.regions else k
        self.region = region
        self.best = best
        self.stats = stats
        self.opts = opts
        self.on_improve = on_improve

    def run(self, skip_isolated: bool = False) -> None:
        g = self.g
        order = degeneracy(g, "all_edges").order
        rank = rank_of(order)
        for v in order:
            if skip_isolated and not g.pos_adj[v] and not g.neg_adj[v]:
                continue
            self.expand(root_state(g, v, rank))

    def record(self, cl, cr) -> None:
        if self.best.offer(cl, cr) and self.on_improve is not None:
            self.on_improve(self.best.clique, self.region)

    def expand(self, st: SearchState) -> None:
        self.stats.tick()
        g, opts, best = self.g, self.opts, self.best
        if opts.vertex_reduction:
            st.pl, st.pr = vertex_reduction_plus(st, g, best.bound, self.lo, self.hi)
        lb = len(st.cl) + len(st.pl)
        rb = len(st.cr) + len(st.pr)
        if lb + rb <= best.bound:
            return
        if opts.regions and (min(lb, rb) < self.lo or max(lb, rb) < self.hi):
            return
        if not (st.pl or st.pr or st.ql or st.qr):
            if len(st.cl) >= self.k and len(st.cr) >= self.k:
                self.record(st.cl, st.cr)
            return
        if not st.pl and not st.pr:
            return
        if opts.coloring and coloring_prune(st, g, best.bound, self.lo, self.hi):
            return

        degree = None
        new_l, new_r = st.pl, st.pr
        if opts.pivot:
            degree = {v: local_degree(v, st, g) for v in st.pl | st.pr | st.ql | st.qr}
            p = choose_pivot(st, g, degree)
            side = st.side_of(p)
            use_l, use_r = compatible(g, p, side)
            new_l, new_r = st.pl - use_l, st.pr - use_r
            if opts.domination:
                where = "P" if p in st.pl or p in st.pr else "Q"
                verdict = domination_filter(p, where, side, new_l, new_r, g)
                if verdict is Domination.PRUNE_BRANCH:
                    return
                if verdict is Domination.RESTRICT_TO_PIVOT:
                    new_l, new_r = ({p}, set()) if side == LEFT else (set(), {p})

        key = (lambda v: (degree[v], v)) if degree is not None else None
        plan = [(LEFT, sorted(new_l, key=key)), (RIGHT, sorted(new_r, key=key))]
        if not st.left_first:
            plan.reverse()
        for side, cands in plan:
            use = g.pos if side == LEFT else g.neg
            other = g.neg if side == LEFT else g.pos
            for v in cands:
                if v not in st.p(side):
                    continue
                cl, cr = set(st.cl), set(st.cr)
                (cl if side == LEFT else cr).add(v)
                child = SearchState(
                    cl, cr,
                    st.pl & use[v], st.pr & other[v],
                    st.ql & use[v], st.qr & other[v],
                    st.depth + 1,
                )
                self.expand(child)
                st.p(side).discard(v)
                st.q(side).add(v)


def search_maximum(
    g: SignedGraph,
    k: int,
    options: SearchOptions = SSP_STAR,
    *,
    slow_threshold: float = DEFAULT_SLOW_THRESHOLD,
    stats: SearchStats | None = None,
    on_improve: ImproveHook | None = None,
    clock: Callable[[], float] = time.perf_counter,
) -> SearchReport:
    if k < 1:
        raise ValueError("k must be >= 1")
    stats = stats if stats is not None else SearchStats()
    best = BestResult(k)
    if not options.regions:
        region = SearchRegion(k, k, 0)
        _RegionSearch(g, k, region, best, stats, options, on_improve).run()
        return SearchReport(best.clique, stats.frames)

    sigma = degeneracy(g, "positive_only").sigma
    region: SearchRegion | None = first_region(k, sigma)
    trace: list[RegionTrace] = []
    while region is not None:
        started = clock()
        work = g
        if options.edge_reduction:
            work = edge_reduction_plus(g, region.kappa_lo, region.kappa_hi)
        _RegionSearch(work, k, region, best, stats, options, on_improve).run(
            skip_isolated=options.edge_reduction
        )
        elapsed = clock() - started
        trace.append(
            RegionTrace(region.index, region.kappa_lo, region.kappa_hi,
                        work.m_pos, work.m_neg, best.epsilon, elapsed)
        )
        region = next_region(region, best.epsilon, k, elapsed, slow_threshold)
    return SearchReport(best.clique, stats.frames, trace)


def mbcs_baseline(g: SignedGraph, k: int, **kw) -> BalancedClique | None:
    return search_maximum(g, k, BASELINE, **kw).clique


def mbcs_ssp(g: SignedGraph, k: int, **kw) -> BalancedClique | None:
    return search_maximum(g, k, SSP, **kw).clique


def mbcs_ssp_star(g: SignedGraph, k: int, **kw) -> BalancedClique | None:
    return search_maximum(g, k, SSP_STAR, **kw).clique
