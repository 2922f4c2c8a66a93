import random
from fractions import Fraction

import pytest

from conftest import bellman_ford, brute_force_lex_shortest
from spannerkit.errors import DirectedInstance
from spannerkit.generators import example5, nonmetric_triangle, random_instance
from spannerkit.graph import (
    dijkstra,
    graph_view,
    minimum_spanning_tree,
    reduce_to_metric_pairs,
    shortest_distances,
    verify_feasible,
)
from spannerkit.instance import Demand, Edge, SpannerInstance, Subgraph


def test_dijkstra_example5_distances():
    inst = example5()
    result = dijkstra(graph_view(inst), 0)  # source a
    assert result.dist[1] == 1  # dist(b) via edge (a,b)
    assert result.dist[2] == 2  # dist(c)
    assert result.path_edges(1) == (0,)


def test_dijkstra_source_equals_target():
    inst = example5()
    result = dijkstra(graph_view(inst), 2)
    assert result.dist[2] == 0
    assert result.path_edges(2) == ()
    assert result.path_nodes(2) == (2,)


def test_dijkstra_unreachable_is_none():
    inst = SpannerInstance(True, 3, (Edge(0, 1, Fraction(1), Fraction(1)),), ())
    result = dijkstra(graph_view(inst), 0)
    assert result.dist[2] is None
    assert result.path_nodes(2) is None


def test_lexicographic_tie_break_two_equal_paths():
    # 0 -> {1,2} -> 3, both length 2: parent tree must route through node 1
    edges = (
        Edge(0, 1, Fraction(1), Fraction(1)),
        Edge(0, 2, Fraction(1), Fraction(1)),
        Edge(1, 3, Fraction(1), Fraction(1)),
        Edge(2, 3, Fraction(1), Fraction(1)),
    )
    inst = SpannerInstance(False, 4, edges, ())
    result = dijkstra(graph_view(inst), 0)
    assert result.dist[3] == 2
    assert result.path_nodes(3) == (0, 1, 3)
    best = brute_force_lex_shortest(graph_view(inst), 0, 3)
    assert best == (2, (0, 1, 3))


def test_lexicographic_tie_break_matches_brute_force_on_random_graphs():
    rng = random.Random(7)
    for _ in range(60):
        inst = random_instance("basic", rng.randint(4, 7), rng.randint(5, 12), rng.randint(0, 10**6))
        view = graph_view(inst)
        result = dijkstra(view, 0)
        for target in range(1, inst.n):
            expected = brute_force_lex_shortest(view, 0, target)
            if expected is None:
                assert result.dist[target] is None
            else:
                assert result.dist[target] == expected[0]
                assert result.path_nodes(target) == expected[1]


def test_dijkstra_matches_bellman_ford_on_random_instances():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(3, 10)
        inst = random_instance(
            "decoupled", n, rng.randint(n - 1, 2 * n), rng.randint(0, 10**6)
        )
        view = graph_view(inst)
        src = rng.randrange(n)
        assert shortest_distances(view, src) == bellman_ford(view, src)


def test_dijkstra_bellman_condition_and_determinism():
    inst = random_instance("decoupled", 8, 14, 5)
    view = graph_view(inst)
    r1 = dijkstra(view, 0)
    r2 = dijkstra(graph_view(inst), 0)
    assert r1.parent_edge == r2.parent_edge  # repeated runs identical
    lengths = inst.lengths
    for i, e in enumerate(inst.edges):
        for u, v in ((e.u, e.v), (e.v, e.u)):
            if r1.dist[u] is not None and r1.dist[v] is not None:
                assert r1.dist[v] <= r1.dist[u] + lengths[i]
    for v in range(1, inst.n):
        if r1.parent_edge[v] is not None:
            u = r1.parent_node[v]
            assert r1.dist[v] == r1.dist[u] + lengths[r1.parent_edge[v]]


# ---------------------------------------------------------------------------
# MST


def test_mst_example5_undirected():
    inst = example5()
    undirected = SpannerInstance(False, 3, inst.edges, (), inst.labels)
    weight, edges = minimum_spanning_tree(undirected)
    assert weight == Fraction(2)
    assert edges == frozenset({1, 2})  # (a,c), (c,b); enumerating all 3 trees confirms


def test_mst_tree_instance_takes_all_edges():
    inst = SpannerInstance(
        False, 3, (Edge(0, 1, Fraction(2), Fraction(1)), Edge(1, 2, Fraction(3), Fraction(1))), ()
    )
    weight, edges = minimum_spanning_tree(inst)
    assert weight == Fraction(5)
    assert edges == frozenset({0, 1})


def test_mst_tie_break_prefers_lower_edge_index():
    edges = (
        Edge(0, 1, Fraction(1), Fraction(1)),
        Edge(1, 2, Fraction(1), Fraction(1)),
        Edge(0, 2, Fraction(1), Fraction(1)),
    )
    inst = SpannerInstance(False, 3, edges, ())
    _, chosen = minimum_spanning_tree(inst)
    assert chosen == frozenset({0, 1})


def test_mst_rejects_directed():
    with pytest.raises(DirectedInstance):
        minimum_spanning_tree(example5())


def test_mst_lower_bounds_connected_spanning_solutions():
    # with all-pairs demands every feasible spanner is connected and spanning,
    # so the exact optimum can never weigh less than the MST
    from spannerkit.oracles import exact_optimum

    for seed in range(25):
        inst = random_instance(
            "decoupled", 5, 8, seed, demand_family="multiplicative", demand_pairs="all", alpha=3
        )
        mst_weight, _ = minimum_spanning_tree(inst)
        assert exact_optimum(inst).weight >= mst_weight


# ---------------------------------------------------------------------------
# Metric pairs


def test_single_pair_is_metric():
    inst = SpannerInstance(
        False, 2, (Edge(0, 1, Fraction(1), Fraction(1)),), (Demand(0, 1, Fraction(2)),)
    )
    assert reduce_to_metric_pairs(inst) == inst.demands


def test_dominated_pair_removed():
    # delta(s,x)=1, delta(x,t)=1, delta(s,t)=3: (s,t) is covered by the others
    inst = SpannerInstance(
        False,
        3,
        (
            Edge(0, 1, Fraction(1), Fraction(1)),
            Edge(1, 2, Fraction(1), Fraction(1)),
            Edge(0, 2, Fraction(1), Fraction(1)),
        ),
        (Demand(0, 1, Fraction(1)), Demand(1, 2, Fraction(1)), Demand(0, 2, Fraction(3))),
    )
    kept = reduce_to_metric_pairs(inst)
    assert {(d.u, d.v) for d in kept} == {(0, 1), (1, 2)}


def test_example5_all_pairs_metric():
    inst = example5()
    assert len(reduce_to_metric_pairs(inst)) == 3


def test_metric_reduction_preserves_feasibility():
    # Feasible for K iff feasible for K' on random subgraphs.
    rng = random.Random(4)
    for trial in range(200):
        inst = random_instance(
            "decoupled",
            rng.randint(4, 7),
            rng.randint(5, 10),
            trial,
            demand_family="freeform",
            demand_pairs="random",
            num_demands=4,
        )
        metric = reduce_to_metric_pairs(inst)
        for _ in range(50):
            subset = frozenset(i for i in range(inst.m) if rng.random() < 0.5)
            sub = Subgraph(inst, subset)
            assert verify_feasible(sub).feasible == verify_feasible(sub, metric).feasible


# ---------------------------------------------------------------------------
# verify_feasible


def test_verify_example5_optimum():
    inst = example5()
    assert verify_feasible(Subgraph(inst, frozenset({1, 2}))).feasible


def test_verify_empty_subgraph_violates_everything():
    inst = example5()
    verdict = verify_feasible(Subgraph(inst, frozenset()))
    assert not verdict.feasible
    assert len(verdict.violations) == 3
    assert all(v.achieved is None for v in verdict.violations)


def test_verify_triangle_keeps_nonmetric_edge():
    # {xy, xz} is feasible at weight 3/2 despite xz being non-metric
    tri = nonmetric_triangle()
    ids = {(e.u, e.v): i for i, e in enumerate(tri.edges)}
    sub = Subgraph(tri, frozenset({ids[(0, 1)], ids[(0, 2)]}))
    verdict = verify_feasible(sub)
    assert verdict.feasible
    assert sub.weight == Fraction(3, 2)
