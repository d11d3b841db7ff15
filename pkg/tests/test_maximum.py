import dataclasses
import math

import pytest
from hypothesis import given, settings, strategies as st

from balclique.enumeration import SearchStats
from balclique.graph import BalancedClique, SignedGraph, check_balanced_clique
from balclique.maximum import (
    BASELINE,
    SSP,
    SSP_STAR,
    BestResult,
    Domination,
    SearchOptions,
    SearchRegion,
    coloring_prune,
    dec,
    domination_filter,
    first_region,
    greedy_color_count,
    mbcs_baseline,
    mbcs_ssp,
    mbcs_ssp_star,
    next_region,
    search_maximum,
)
from balclique.oracle import brute_max
from balclique.state import LEFT, RIGHT, SearchState

from graphs import g6, g6_minus_25, signed_graphs

ALL_SEARCHES = [mbcs_baseline, mbcs_ssp, mbcs_ssp_star]


def g6_root():
    return SearchState({0}, set(), {1, 2}, {3, 4, 5}, set(), set())


def test_first_region_and_termination():
    region = first_region(2, 2)
    assert (region.kappa_lo, region.kappa_hi) == (2, 3)
    assert BestResult(2).epsilon == 4
    # eps=6 gives kappa_lo=3 and kappa_hi=max(Dec(3), 3)=3, no progress, so stop
    assert next_region(region, 6, 2) is None


def test_slow_region_step_halves():
    nxt = next_region(SearchRegion(2, 20, 4), 33, 2, last_duration=30.0, slow_threshold=20.0)
    assert (nxt.kappa_lo, nxt.kappa_hi, nxt.index) == (13, 13, 5)


def test_fast_region_step_subtracts_two():
    nxt = next_region(SearchRegion(2, 20), 10, 2, last_duration=1.0)
    assert (nxt.kappa_lo, nxt.kappa_hi) == (2, 18)
    assert dec(7, 0.0, 20.0) == 5 and dec(7, 21.0, 20.0) == math.ceil(7 / 2)


def test_schedule_stops_when_lower_bound_overtakes():
    # eps large enough that kappa_lo exceeds what is left of kappa_hi
    assert next_region(SearchRegion(2, 5), 12, 2) is None


def test_best_result_sentinel_admits_size_2k():
    best = BestResult(2)
    assert best.bound == 3
    assert best.offer({0, 1}, {2, 3})
    assert (best.epsilon, best.bound) == (4, 4)
    assert not best.offer({0, 1}, {2, 5})


def test_optimum_of_exactly_2k_is_found():
    g = SignedGraph(4, [(0, 1), (2, 3)], [(0, 2), (0, 3), (1, 2), (1, 3)])
    for run in ALL_SEARCHES:
        assert run(g, 2) == BalancedClique.of([0, 1], [2, 3])


def test_greedy_color_count_examples():
    tri = SignedGraph(3, [(0, 1), (0, 2), (1, 2)])
    path = SignedGraph(3, [(0, 1), (1, 2)])
    assert greedy_color_count(set(), tri) == 0
    assert greedy_color_count({0, 1, 2}, tri) == 3
    assert greedy_color_count({0, 1, 2}, path) == 2
    # negative edges never constrain colours
    assert greedy_color_count({0, 1, 2}, SignedGraph(3, [], [(0, 1), (1, 2)])) == 1


def test_coloring_prune_examples():
    assert coloring_prune(SearchState(), g6(), 0, 1, 1)
    assert not coloring_prune(g6_root(), g6(), 4, 2, 3)
    assert coloring_prune(g6_root(), g6(), 6, 2, 3)


def test_domination_cases_on_pivot_side():
    g = SignedGraph(5, [(0, 1)], [])
    assert domination_filter(2, "Q", LEFT, {3}, set(), g) is Domination.PRUNE_BRANCH
    assert domination_filter(2, "P", LEFT, {2, 3}, set(), g) is Domination.RESTRICT_TO_PIVOT
    # two survivors: prune/restrict only when they are non-adjacent
    assert domination_filter(2, "Q", LEFT, {3, 4}, set(), g) is Domination.PRUNE_BRANCH
    assert domination_filter(4, "P", RIGHT, set(), {4, 0, 1}, g) is Domination.NO_ACTION
    assert domination_filter(4, "P", RIGHT, set(), {4, 2, 3}, g) is Domination.RESTRICT_TO_PIVOT


def test_domination_ignores_survivors_on_the_other_side():
    g = SignedGraph(4, [], [])
    assert domination_filter(2, "Q", LEFT, set(), {3}, g) is Domination.NO_ACTION
    assert domination_filter(2, "P", LEFT, {2}, {3}, g) is Domination.NO_ACTION
    assert domination_filter(2, "P", LEFT, {3}, set(), g) is Domination.NO_ACTION


def test_cross_side_domination_would_lose_the_optimum():
    # 0+1, 0+3, 1-3: the only (1,1) cliques are ({1},{3}) and nothing bigger
    g = SignedGraph(4, [(0, 1), (0, 3)], [(1, 3)])
    assert len(brute_max(g, 1)) == 2
    opts = SearchOptions(pivot=True, domination=True)
    assert len(search_maximum(g, 1, opts).clique) == 2
    assert len(search_maximum(g, 1, SSP_STAR).clique) == 2


@pytest.mark.parametrize("run", ALL_SEARCHES)
def test_search_examples(run):
    assert run(g6(), 2) == BalancedClique.of([0, 1, 2], [3, 4, 5])
    assert len(run(g6_minus_25(), 2)) == 5
    assert run(g6(), 4) is None


def test_region_trace_on_g6():
    report = search_maximum(g6(), 2, SSP_STAR)
    rows = [dataclasses.astuple(r)[:6] for r in report.regions]
    assert rows == [(0, 2, 3, 6, 9, 6)]
    assert report.regions[0].as_dict()["timing"]["seconds"] >= 0


def test_slow_schedule_halves_kappa_hi():
    # a large positive clique pushes sigma up; every region counts as slow
    n = 14
    pos = [(u, v) for u in range(12) for v in range(u + 1, 12)]
    neg = [(u, 12) for u in range(12)] + [(u, 13) for u in range(12)]
    g = SignedGraph(n, pos, neg)
    report = search_maximum(g, 1, SSP, slow_threshold=-1.0)
    his = [r.kappa_hi for r in report.regions]
    assert his[0] == 12
    for prev, cur, row in zip(his, his[1:], report.regions[1:]):
        assert cur == max(math.ceil(prev / 2), row.kappa_lo)
    assert len(report.clique) == 13


def test_improvements_are_reported_in_increasing_size():
    sizes = []
    search_maximum(g6_minus_25(), 1, BASELINE, on_improve=lambda c, r: sizes.append(len(c)))
    assert sizes == sorted(sizes) and len(set(sizes)) == len(sizes) and sizes[-1] == 5


def test_search_counts_frames():
    stats = SearchStats()
    search_maximum(g6(), 2, BASELINE, stats=stats)
    assert stats.frames > 0
    with pytest.raises(ValueError):
        search_maximum(g6(), 0)


VARIANTS = [BASELINE, SSP, SSP_STAR] + [
    dataclasses.replace(SSP_STAR, **{flag: False})
    for flag in ("edge_reduction", "vertex_reduction", "coloring", "pivot", "domination")
]


@given(signed_graphs(max_n=10), st.integers(1, 3))
@settings(max_examples=200, deadline=None)
def test_every_variant_matches_oracle_size(g, k):
    expected = brute_max(g, k)
    for options in VARIANTS:
        got = search_maximum(g, k, options).clique
        if expected is None:
            assert got is None
        else:
            assert len(got) == len(expected)
            assert got.min_side >= k and check_balanced_clique(g, got)
