import pytest
from hypothesis import given, settings, strategies as st

from balclique.graph import SignedGraph
from balclique.oracle import brute_enum, brute_max
from balclique.reduction import (
    edge_common_neighbor_counts,
    edge_reduction,
    edge_reduction_plus,
    reduce_for_enumeration,
    vertex_reduction,
    vertex_reduction_plus,
)
from balclique.state import SearchState

from graphs import g6, g6_minus_25, signed_graphs


def g6_root():
    return SearchState({0}, set(), {1, 2}, {3, 4, 5}, set(), set())


def test_vertex_reduction_all_positive_graph_empties():
    g = SignedGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert vertex_reduction(g, 1).m == 0


def test_vertex_reduction_g6_exact_threshold():
    assert vertex_reduction(g6(), 3) == g6()


def test_vertex_reduction_drops_pendant_vertex():
    base = g6()
    g = SignedGraph(7, base.positive_edges() + [(0, 6)], base.negative_edges())
    h = vertex_reduction(g, 2)
    assert h.n == 7 and h.degree(6) == 0
    assert set(h.edges()) == set(base.edges())


def test_vertex_reduction_rejects_bad_k():
    with pytest.raises(ValueError):
        vertex_reduction(g6(), 0)


def test_edge_counts_on_g6():
    counts = edge_common_neighbor_counts(g6())
    assert counts.positive[(0, 1)] == (1, 3)
    assert counts.negative[(0, 3)] == (2, 2)
    assert counts.get(3, 0) == (2, 2)


def test_edge_counts_negative_pair_orientation():
    # 0-1 negative, 2 positive to 0 and negative to 1
    g = SignedGraph(3, [(0, 2)], [(0, 1), (1, 2)])
    counts = edge_common_neighbor_counts(g)
    assert counts.get(0, 1) == (1, 0)
    assert counts.get(1, 0) == (0, 1)


def test_edge_counts_single_edge_all_zero():
    counts = edge_common_neighbor_counts(SignedGraph(2, [(0, 1)]))
    assert counts.positive == {(0, 1): (0, 0)}


def test_edge_reduction_g6_exact_threshold():
    assert edge_reduction(g6(), 3) == g6()


def test_edge_reduction_cascade_empties_g6_minus_edge():
    g = g6_minus_25()
    assert edge_reduction(g, 3).m == 0
    assert brute_enum(g, 3) == set()


def test_edge_reduction_k1_keeps_negative_edges_only_needs_mm_support():
    # lone positive edge has no common negative neighbour; lone negative edge is fine
    g = SignedGraph(4, [(0, 1)], [(2, 3)])
    h = edge_reduction(g, 1)
    assert set(h.edges()) == {(2, 3, -1)}


def test_edge_reduction_plus_examples():
    assert edge_reduction_plus(g6(), 3, 3) == g6()
    assert edge_reduction_plus(g6(), 3, 4).m == 0
    g = SignedGraph(4, [(0, 1)], [(2, 3)])
    assert set(edge_reduction_plus(g, 1, 1).edges()) == {(2, 3, -1)}
    with pytest.raises(ValueError):
        edge_reduction_plus(g6(), 4, 3)


def test_vertex_reduction_plus_keeps_all_when_bound_is_low():
    pl, pr = vertex_reduction_plus(g6_root(), g6(), 4, 2, 3)
    assert (pl, pr) == ({1, 2}, {3, 4, 5})


def test_vertex_reduction_plus_cascades_when_total_hits_epsilon():
    st_ = g6_root()
    pl, pr = vertex_reduction_plus(st_, g6(), 6, 2, 3)
    assert (pl, pr) == (set(), set())
    # the input state is left alone
    assert st_.pl == {1, 2} and st_.pr == {3, 4, 5}


def test_vertex_reduction_plus_empty_candidates():
    st_ = SearchState({0}, set(), set(), set(), {1}, set())
    assert vertex_reduction_plus(st_, g6(), 0, 1, 1) == (set(), set())


@given(signed_graphs(max_n=8), st.integers(1, 3))
@settings(max_examples=150, deadline=None)
def test_reductions_preserve_enumeration(g, k):
    expected = brute_enum(g, k)
    assert brute_enum(vertex_reduction(g, k), k) == expected
    assert brute_enum(edge_reduction(g, k), k) == expected
    assert brute_enum(reduce_for_enumeration(g, k), k) == expected


@given(signed_graphs(max_n=8), st.integers(1, 2))
@settings(max_examples=150, deadline=None)
def test_edge_reduction_plus_keeps_the_optimum(g, k):
    best = brute_max(g, k)
    if best is None:
        return
    h = edge_reduction_plus(g, best.min_side, best.max_side)
    assert len(brute_max(h, k)) == len(best)


@given(signed_graphs(max_n=8))
@settings(max_examples=100, deadline=None)
def test_edge_reduction_reaches_fixpoint(g):
    # a fresh count on the output must satisfy every keep condition
    h = edge_reduction(g, 2)
    fresh = edge_common_neighbor_counts(h)
    for pp, mm in fresh.positive.values():
        assert pp >= 0 and mm >= 2
    for pm, mp in fresh.negative.values():
        assert pm >= 1 and mp >= 1
