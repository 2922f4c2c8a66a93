import random
from fractions import Fraction

import pytest

from conftest import brute_force_optimum
from spannerkit.errors import (
    InfeasibleInstance,
    SpannerError,
    TooLarge,
    TooManyCuts,
)
from spannerkit.generators import example5, nonmetric_triangle, random_instance
from spannerkit.graph import graph_view, shortest_distances, verify_feasible
from spannerkit.greedy import augmented_greedy, greedy
from spannerkit.instance import Demand, Edge, SpannerInstance, Subgraph
from spannerkit.oracles import (
    ascending_cut_count,
    check_cut_lemma,
    dodis_khanna_demo,
    enumerate_ascending_cuts,
    exact_optimum,
    potential_monitor,
    restricted_subgraph,
)


# ---------------------------------------------------------------------------
# Exact optimum


def test_exact_example5():
    result = exact_optimum(example5())
    assert result.weight == Fraction(2)
    assert result.edge_set == frozenset({1, 2})


def test_exact_triangle_keeps_nonmetric_edge():
    tri = nonmetric_triangle()
    result = exact_optimum(tri)
    assert result.weight == Fraction(3, 2)
    pairs = {(tri.edges[i].u, tri.edges[i].v) for i in result.edge_set}
    assert pairs == {(0, 1), (0, 2)}  # xy and the cheap long edge xz


def test_exact_triangle_without_nonmetric_edge():
    tri = nonmetric_triangle()
    edges = tuple(e for e in tri.edges if (e.u, e.v) != (0, 2))
    pruned = SpannerInstance(False, 3, edges, tri.demands, tri.labels)
    assert exact_optimum(pruned).weight == Fraction(2)


def test_exact_empty_demands():
    inst = SpannerInstance(False, 2, (Edge(0, 1, Fraction(9), Fraction(1)),), ())
    result = exact_optimum(inst)
    assert result.weight == Fraction(0)
    assert result.edge_set == frozenset()


def test_exact_cap_enforced():
    inst = random_instance("basic", 8, 24, 0)
    with pytest.raises(TooLarge):
        exact_optimum(inst, max_edges=10)


def test_exact_infeasible_full_graph():
    inst = SpannerInstance(
        True, 2, (Edge(0, 1, Fraction(1), Fraction(3)),), (Demand(0, 1, Fraction(1)),)
    )
    with pytest.raises(InfeasibleInstance):
        exact_optimum(inst)


def test_exact_matches_enumeration_and_bounds_solvers():
    rng = random.Random(13)
    for trial in range(40):
        inst = random_instance(
            "decoupled",
            rng.randint(3, 6),
            rng.randint(3, 9),
            trial * 31 + 7,
            demand_family="freeform",
            demand_pairs="random",
            num_demands=3,
        )
        result = exact_optimum(inst)
        weight, subset = brute_force_optimum(inst)
        assert result.weight == weight
        assert tuple(sorted(result.edge_set)) == subset  # same lexicographic tie-break
        for solver_sub in (greedy(inst), augmented_greedy(inst)[0]):
            assert result.weight <= solver_sub.weight


def test_exact_deterministic():
    inst = random_instance("decoupled", 5, 8, 321, demand_family="freeform",
                           demand_pairs="random", num_demands=3)
    a, b = exact_optimum(inst), exact_optimum(inst)
    assert a.weight == b.weight and a.edge_set == b.edge_set


# ---------------------------------------------------------------------------
# Ascending cuts


def test_cut_count_identity_example5():
    inst = example5()
    opt = Subgraph(inst, frozenset({1, 2}))
    for pair, expected in (((0, 1, 3), 5), ((0, 2, 2), 4), ((2, 1, 2), 4)):
        cuts = list(enumerate_ascending_cuts(opt, pair))
        assert len(cuts) == expected == ascending_cut_count(3, pair[2])


def test_fig2_labeling_satisfied():
    inst = example5()
    opt = Subgraph(inst, frozenset({1, 2}))
    found = False
    for labeling, satisfied in enumerate_ascending_cuts(opt, (0, 1, 3)):
        assert labeling.labels[0] == 0 and labeling.labels[1] == 4
        if labeling.labels == (0, 4, 2):
            assert satisfied  # crossed by the arc c_2 -> b_3
            found = True
    assert found


def test_two_node_instance_single_cut():
    inst = SpannerInstance(
        True, 2, (Edge(0, 1, Fraction(1), Fraction(1)),), (Demand(0, 1, Fraction(1)),)
    )
    cuts = list(enumerate_ascending_cuts(Subgraph(inst, frozenset({0})), (0, 1, 1)))
    assert len(cuts) == 1
    assert cuts[0][1]


def test_empty_subgraph_has_unsatisfied_cut():
    inst = example5()
    cuts = list(enumerate_ascending_cuts(Subgraph(inst, frozenset()), (0, 1, 3)))
    assert not any(sat for _, sat in cuts)


def test_cut_cap_enforced():
    inst = random_instance("basic", 10, 15, 2, demand_family="multiplicative", alpha=3)
    sub = Subgraph(inst, frozenset(range(inst.m)))
    d = inst.demands[0]
    with pytest.raises(TooManyCuts):
        list(enumerate_ascending_cuts(sub, (d.u, d.v, int(d.delta)), cap=100))


def test_cut_lemma_example5_optimum():
    report = check_cut_lemma(Subgraph(example5(), frozenset({1, 2})))
    assert report.ok
    assert all(p.all_satisfied and p.within_budget for p in report.pairs)


def test_cut_lemma_complete_feasible_subgraph():
    inst = example5()
    report = check_cut_lemma(Subgraph(inst, frozenset(range(inst.m))))
    assert all(p.satisfied_count == p.cut_count for p in report.pairs)


def test_cut_lemma_missing_edge():
    inst = example5()
    report = check_cut_lemma(Subgraph(inst, frozenset({1})))  # drop (c,b)
    by_pair = {(p.u, p.v): p for p in report.pairs}
    assert not by_pair[(2, 1)].all_satisfied and not by_pair[(2, 1)].within_budget
    assert not by_pair[(0, 1)].all_satisfied and not by_pair[(0, 1)].within_budget
    assert by_pair[(0, 2)].all_satisfied and by_pair[(0, 2)].within_budget


def test_cut_lemma_biconditional_random_samples():
    rng = random.Random(3)
    checked = 0
    for trial in range(100):
        n = rng.randint(3, 4)
        inst = random_instance(
            "decoupled",
            n,
            rng.randint(n, n + 3),
            trial * 17 + 1,
            demand_family="freeform",
            demand_pairs="random",
            num_demands=2,
            integer_lengths=True,
            max_length=2,
        )
        subset = frozenset(i for i in range(inst.m) if rng.random() < 0.55)
        report = check_cut_lemma(Subgraph(inst, subset), seed=trial)
        assert report.ok
        checked += len(report.pairs)
    assert checked >= 100


# ---------------------------------------------------------------------------
# Restricted subgraph


def test_restricted_path_graph():
    edges = (Edge(0, 1, Fraction(1), Fraction(1)), Edge(1, 2, Fraction(1), Fraction(1)))
    inst = SpannerInstance(False, 3, edges, (Demand(0, 2, Fraction(2)),))
    nodes, edge_ids = restricted_subgraph(inst, (0, 2, 2))
    assert nodes == frozenset({0, 1, 2})
    assert edge_ids == frozenset({0, 1})


def test_restricted_example5_pair_ac():
    nodes, edge_ids = restricted_subgraph(example5(), (0, 2, 2))
    assert nodes == frozenset({0, 2})
    assert edge_ids == frozenset({1})  # only (a,c); the a->b branch is a dead end


def test_restricted_tight_budget_is_union_of_shortest_paths():
    inst = random_instance("basic", 6, 10, 44)
    view = graph_view(inst)
    d02 = shortest_distances(view, 0)[2]
    nodes, edge_ids = restricted_subgraph(inst, (0, 2, int(d02)))
    dist_from = shortest_distances(view, 0)
    dist_to = shortest_distances(graph_view(inst, reverse=True), 2)
    expected = {z for z in range(inst.n) if dist_from[z] + dist_to[z] == d02}
    assert nodes == frozenset(expected)


def test_restricted_subgraph_soundness():
    # Feasibility of a pair depends only on the edges inside its region.
    rng = random.Random(5)
    for trial in range(60):
        inst = random_instance(
            "decoupled",
            rng.randint(4, 7),
            rng.randint(5, 11),
            trial * 13 + 3,
            demand_family="freeform",
            demand_pairs="random",
            num_demands=2,
            integer_lengths=True,
        )
        d = inst.demands[0]
        pair = (d.u, d.v, int(d.delta))
        _, region = restricted_subgraph(inst, pair)
        subset = frozenset(i for i in range(inst.m) if rng.random() < 0.5)
        outside = [i for i in range(inst.m) if i not in region]
        toggled = subset.symmetric_difference(
            i for i in outside if rng.random() < 0.5
        )
        demand_only = (Demand(d.u, d.v, d.delta),)
        verdict_a = verify_feasible(Subgraph(inst, subset), demand_only).feasible
        verdict_b = verify_feasible(Subgraph(inst, subset & region), demand_only).feasible
        verdict_c = verify_feasible(Subgraph(inst, toggled), demand_only).feasible
        assert verdict_a == verdict_b
        assert (toggled & region) != (subset & region) or verdict_a == verdict_c


# ---------------------------------------------------------------------------
# Subdivision counterexample demo


def test_demo_default_is_infeasible_with_original_opt_one():
    report = dodis_khanna_demo()
    assert report.original_optimum == Fraction(1)
    assert not report.transformed_reachable
    assert report.lp_status == "infeasible"
    assert "no s+_0 -> t+_2 path" in report.to_text()


def test_demo_alpha3_control_feasible():
    report = dodis_khanna_demo(alpha=3)
    assert report.transformed_reachable
    assert report.lp_status == "optimal"


def test_demo_unit_length_edge_feasible():
    report = dodis_khanna_demo(edge_length=1, alpha=2)
    assert report.transformed_reachable


def test_demo_json_round_trip():
    import json

    doc = json.loads(dodis_khanna_demo().to_json())
    assert doc["transformed_reachable"] is False
    assert doc["original_optimum"] == "1"


# ---------------------------------------------------------------------------
# Potential monitor


def _additive_instance(n, m, seed, beta):
    return random_instance(
        "basic", n, m, seed, demand_family="additive", demand_pairs="all", beta=beta
    )


def test_monitor_accepts_clean_run():
    inst = _additive_instance(10, 18, 1, 2)
    trace = []
    augmented_greedy(inst, mst_lift=True, trace=trace)
    report = potential_monitor(inst, trace, 2)
    assert report.max_delta_potential <= 0
    assert report.final_size == sum(len(s.new_edges) for s in trace)


def test_monitor_skipped_steps_change_nothing():
    inst = _additive_instance(8, 16, 2, 2)
    trace = []
    augmented_greedy(inst, mst_lift=True, trace=trace)
    report = potential_monitor(inst, trace, 2)
    for step in report.steps:
        if not step.executed:
            assert step.delta_degree_cost == 0
            assert step.delta_slack == 0
            assert step.delta_potential == 0


def test_monitor_requires_unit_lengths():
    inst = random_instance(
        "decoupled", 6, 9, 3, demand_family="additive", demand_pairs="all", beta=2
    )
    with pytest.raises(SpannerError):
        potential_monitor(inst, [], 2)


def test_monitor_requires_all_pairs_demands():
    inst = random_instance("basic", 6, 9, 4, demand_family="additive",
                           demand_pairs="edges", beta=2)
    with pytest.raises(SpannerError):
        potential_monitor(inst, [], 2)


def test_monitor_requires_beta_at_least_two():
    inst = _additive_instance(6, 9, 5, 2)
    with pytest.raises(SpannerError):
        potential_monitor(inst, [], 1)


def test_monitor_random_instances_never_increase():
    rng = random.Random(9)
    for trial in range(10):
        beta = 2 if trial % 2 else 3
        inst = _additive_instance(rng.randint(8, 14), rng.randint(12, 26), 100 + trial, beta)
        trace = []
        augmented_greedy(inst, mst_lift=True, trace=trace)
        report = potential_monitor(inst, trace, beta)
        assert report.max_delta_potential <= 0
