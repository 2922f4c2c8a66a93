import json
from fractions import Fraction

import pytest

from spannerkit.errors import NonIntegerLength, ParseError
from spannerkit.generators import example5, random_instance
from spannerkit.graph import graph_view, shortest_distances
from spannerkit.instance import (
    Demand,
    Edge,
    SpannerInstance,
    Subgraph,
    load,
    require_integer_lengths,
    save,
    validate,
)


def test_example5_is_valid():
    assert validate(example5()).ok


def test_self_loop_flagged():
    inst = SpannerInstance(
        True, 2, (Edge(0, 0, Fraction(1), Fraction(1)), Edge(0, 1, Fraction(1), Fraction(1))), ()
    )
    assert "self-loop" in validate(inst).codes()


def test_unsatisfiable_demand_flagged():
    # delta(u,v)=1 but d_G(u,v)=2: no subgraph can beat the graph's own distance
    inst = SpannerInstance(
        False,
        3,
        (Edge(0, 1, Fraction(1), Fraction(1)), Edge(1, 2, Fraction(1), Fraction(1))),
        (Demand(0, 2, Fraction(1)),),
    )
    assert "unsatisfiable-demand" in validate(inst).codes()


def test_duplicate_edge_and_demand_flagged():
    inst = SpannerInstance(
        False,
        2,
        (Edge(0, 1, Fraction(1), Fraction(1)), Edge(1, 0, Fraction(2), Fraction(1))),
        (Demand(0, 1, Fraction(1)), Demand(1, 0, Fraction(1))),
    )
    codes = validate(inst).codes()
    assert "duplicate-edge" in codes
    assert "duplicate-demand" in codes


def test_disconnected_undirected_flagged():
    inst = SpannerInstance(
        False, 4, (Edge(0, 1, Fraction(1), Fraction(1)), Edge(2, 3, Fraction(1), Fraction(1))), ()
    )
    assert "not-connected" in validate(inst).codes()


def test_directed_needs_demand_reachability_not_weak_connectivity():
    # u <- v edge only; demand u -> v is unsatisfiable even though weakly connected
    inst = SpannerInstance(
        True, 2, (Edge(1, 0, Fraction(1), Fraction(1)),), (Demand(0, 1, Fraction(5)),)
    )
    assert "unsatisfiable-demand" in validate(inst).codes()


def test_oversized_demand_flagged():
    inst = SpannerInstance(
        False, 2, (Edge(0, 1, Fraction(1), Fraction(1)),), (Demand(0, 1, Fraction(100)),)
    )
    assert "oversized-demand" in validate(inst).codes()


def test_save_load_round_trip(tmp_path):
    inst = example5()
    p = tmp_path / "ex5.json"
    save(inst, str(p))
    again = load(str(p))
    assert again == inst.canonical()
    # round-trip identity on canonical form: a second save is byte-identical
    p2 = tmp_path / "ex5b.json"
    save(again, str(p2))
    assert p.read_bytes() == p2.read_bytes()


def test_example5_file_contents(tmp_path):
    p = tmp_path / "ex5.json"
    save(example5(), str(p))
    doc = json.loads(p.read_text())
    by_pair = {(e["u"], e["v"]): e for e in doc["edges"]}
    assert by_pair[(0, 1)]["w"] == "5"  # w(a,b) = 5
    assert by_pair[(0, 2)]["len"] == "2"  # len(a,c) = 2
    deltas = {(d["u"], d["v"]): d["delta"] for d in doc["demands"]}
    assert deltas[(0, 1)] == "3"


def test_canonical_serialization_deterministic(tmp_path):
    # same instance with edges listed in a different order -> identical bytes
    inst = example5()
    shuffled = SpannerInstance(
        inst.directed, inst.n, tuple(reversed(inst.edges)), tuple(reversed(inst.demands)), inst.labels
    )
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save(inst, str(p1))
    save(shuffled, str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_empty_demands_is_valid_and_greedy_returns_empty(tmp_path):
    from spannerkit.greedy import greedy

    inst = SpannerInstance(False, 2, (Edge(0, 1, Fraction(1), Fraction(1)),), ())
    assert validate(inst).ok
    p = tmp_path / "nok.json"
    save(inst, str(p))
    assert load(str(p)).demands == ()
    assert greedy(inst).edge_set == frozenset()


def test_zero_denominator_in_file_is_parse_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(
        json.dumps(
            {
                "directed": False,
                "n": 2,
                "edges": [{"u": 0, "v": 1, "w": "1/0", "len": "1"}],
                "demands": [],
            }
        )
    )
    with pytest.raises(ParseError):
        load(str(p))


def test_malformed_file_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("not json at all {")
    with pytest.raises(ParseError):
        load(str(p))
    p.write_text(json.dumps({"directed": False, "n": 2}))
    with pytest.raises(ParseError):
        load(str(p))


def test_labels_round_trip(tmp_path):
    inst = example5()
    p = tmp_path / "ex5.json"
    save(inst, str(p))
    again = load(str(p))
    assert again.labels == ("a", "b", "c")
    assert again.node_by_label("c") == 2


def test_require_integer_lengths_example5():
    ii = require_integer_lengths(example5())
    assert ii.delta_bar == 3
    assert ii.lengths == (1, 2, 1)


def test_require_integer_lengths_floors_demands():
    inst = SpannerInstance(
        False,
        2,
        (Edge(0, 1, Fraction(1), Fraction(1)),),
        (Demand(0, 1, Fraction(5, 2)),),
    )
    ii = require_integer_lengths(inst)
    assert ii.demands[0].delta == 2


def test_require_integer_lengths_rejects_fractional_edge():
    inst = SpannerInstance(False, 2, (Edge(0, 1, Fraction(1), Fraction(3, 2)),), ())
    with pytest.raises(NonIntegerLength) as info:
        require_integer_lengths(inst)
    assert info.value.edge_index == 0


def test_validated_instances_have_satisfiable_demands():
    for seed in range(40):
        inst = random_instance(
            "decoupled", 7, 11, seed, demand_family="freeform", demand_pairs="random"
        )
        assert validate(inst).ok
        view = graph_view(inst)
        for d in inst.demands:
            assert shortest_distances(view, d.u)[d.v] <= d.delta


def test_subgraph_weight_and_size():
    inst = example5()
    sub = Subgraph(inst, frozenset({1, 2}))
    assert sub.weight == Fraction(2)
    assert sub.size == 2
