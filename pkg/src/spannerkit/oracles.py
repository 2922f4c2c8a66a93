"""Exact and brute-force reference machinery.

Everything here exists to certify the approximation algorithms at desk scale:
a branch-and-bound search for the true optimum, exhaustive ascending-cut
enumeration matching reachability in the layered extension, the per-pair
reachable subgraph used by the degree-restricted rounding factor, a fixed
reproduction of the broken subdivide-and-reuse transform for length-encoded
flow, and a step-by-step monitor for the degree-potential argument behind the
additive-spanner size bound.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InfeasibleInstance,
    LemmaViolation,
    MonotonicityViolation,
    SpannerError,
    TooLarge,
    TooManyCuts,
)
from .extension import build_extension, reachable_path
from .graph import graph_view, shortest_distances, unit_all_pairs, verify_feasible
from .greedy import GreedyStep
from .instance import (
    Demand,
    Edge,
    IntDemand,
    IntegerInstance,
    SpannerInstance,
    Subgraph,
    require_integer_lengths,
)


# ---------------------------------------------------------------------------
# Exact optimum via branch and bound


@dataclass
class ExactResult:
    weight: Fraction
    edge_set: frozenset[int]
    nodes_explored: int

    def edge_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge_set))


def exact_optimum(instance: SpannerInstance, *, max_edges: int = 22) -> ExactResult:
    """Global minimum-weight feasible subgraph by subset branch and bound.

    Branches on edges in descending weight order, exclusion first; prunes a
    branch when its weight already exceeds the incumbent or when even keeping
    all undecided edges cannot satisfy the demands.  Among equal-weight
    optima the lexicographically smallest sorted edge-index tuple wins, which
    makes the result deterministic.  Exact arithmetic throughout.
    """
    m = instance.m
    if m > max_edges:
        raise TooLarge(f"{m} edges exceeds the exact-search cap of {max_edges}")
    demands = instance.demands
    weights = [e.weight for e in instance.edges]

    def feasible(edge_ids) -> bool:
        return verify_feasible(Subgraph(instance, frozenset(edge_ids)), demands).feasible

    if not feasible(range(m)):
        raise InfeasibleInstance("the full edge set violates some demand")

    order = sorted(range(m), key=lambda i: (-weights[i], i))
    best_weight = sum(weights, Fraction(0))
    best_tuple = tuple(range(m))
    explored = 0

    def consider(included: list[int], weight: Fraction) -> None:
        nonlocal best_weight, best_tuple
        candidate = tuple(sorted(included))
        if weight < best_weight or (weight == best_weight and candidate < best_tuple):
            best_weight = weight
            best_tuple = candidate

    def dfs(idx: int, included: list[int], envelope: set[int], weight: Fraction) -> None:
        nonlocal explored
        explored += 1
        if weight > best_weight:
            return
        if idx == len(order):
            consider(included, weight)
            return
        e = order[idx]
        # Exclude e: the envelope shrinks, so feasibility must be re-checked.
        envelope.discard(e)
        if feasible(envelope):
            dfs(idx + 1, included, envelope, weight)
        envelope.add(e)
        # Include e: envelope unchanged, still feasible.
        included.append(e)
        dfs(idx + 1, included, envelope, weight + weights[e])
        included.pop()

    dfs(0, [], set(range(m)), Fraction(0))
    return ExactResult(best_weight, frozenset(best_tuple), explored)


# ---------------------------------------------------------------------------
# Ascending cuts


@dataclass(frozen=True)
class CutLabeling:
    """A per-node layer threshold inducing an ascending source/sink cut.

    Node copies q_i with i < labels[q] fall on the sink side B; the rest on
    the source side A.  The demand's endpoints are pinned: labels[u] = 0 and
    labels[v] = delta + 1.
    """

    u: int
    v: int
    delta: int
    labels: tuple[int, ...]


def _as_int_demand(instance: IntegerInstance, pair) -> IntDemand:
    if isinstance(pair, IntDemand):
        return pair
    if isinstance(pair, Demand):
        return IntDemand(pair.u, pair.v, math.floor(pair.delta))
    u, v, delta = pair
    return IntDemand(int(u), int(v), int(delta))


def _directed_arc_views(instance: IntegerInstance, edge_ids):
    """(s, t, length) triples for each usable arc direction of included edges."""
    views = []
    for e in sorted(edge_ids):
        edge = instance.edges[e]
        length = instance.lengths[e]
        views.append((edge.u, edge.v, length, e))
        if not instance.directed:
            views.append((edge.v, edge.u, length, e))
    return views


def ascending_cut_count(n: int, delta: int) -> int:
    return (delta + 2) ** (n - 2)


def crossing_arc(labels, arc_views, delta: int):
    """First extension arc of the subgraph crossing the cut A -> B, if any.

    An arc copy (s_i, t_{i+L}) crosses iff i >= labels[s] and i+L < labels[t];
    such an i exists iff labels[s] <= min(delta - L, labels[t] - L - 1).
    """
    for s, t, length, e in arc_views:
        if length > delta:
            continue
        i = labels[s]
        if i <= delta - length and i <= labels[t] - length - 1:
            return (s, i, t, i + length, e)
    return None


def enumerate_ascending_cuts(subgraph: Subgraph, pair, *, cap: int = 10**6):
    """Yield every ascending cut labeling for the pair, with its satisfaction.

    Exactly ``(delta + 2)^(n-2)`` labelings are produced.  A cut is satisfied
    when some arc of the subgraph's extension crosses from the source side to
    the sink side; self-arcs never cross an ascending cut.
    """
    instance = require_integer_lengths(subgraph.instance)
    d = _as_int_demand(instance, pair)
    n = instance.n
    total = ascending_cut_count(n, d.delta)
    if total > cap:
        raise TooManyCuts(f"{total} ascending cuts exceeds the cap of {cap}")
    arc_views = _directed_arc_views(instance, subgraph.edge_set)
    free_nodes = [q for q in range(n) if q not in (d.u, d.v)]
    labels = [0] * n
    labels[d.v] = d.delta + 1
    for assignment in itertools.product(range(d.delta + 2), repeat=len(free_nodes)):
        for q, val in zip(free_nodes, assignment):
            labels[q] = val
        satisfied = crossing_arc(labels, arc_views, d.delta) is not None
        yield CutLabeling(d.u, d.v, d.delta, tuple(labels)), satisfied


@dataclass
class PairCutReport:
    u: int
    v: int
    delta: int
    cut_count: int
    satisfied_count: int
    all_satisfied: bool
    distance: object  # int | None
    within_budget: bool


@dataclass
class CutLemmaReport:
    pairs: list[PairCutReport] = field(default_factory=list)
    nonascending_sampled: int = 0

    @property
    def ok(self) -> bool:
        return all(p.all_satisfied == p.within_budget for p in self.pairs)


def check_cut_lemma(
    subgraph: Subgraph,
    demands=None,
    *,
    cap: int = 10**6,
    nonascending_samples: int = 25,
    seed: int = 0,
) -> CutLemmaReport:
    """Certify: all ascending cuts satisfied <=> the pair meets its bound.

    Also spot-checks random non-ascending cuts, which must always be crossed
    by a waiting self-arc.  Any mismatch raises :class:`LemmaViolation` --
    that would mean the extension or the cut machinery is wrong.
    """
    instance = require_integer_lengths(subgraph.instance)
    if demands is None:
        demands = instance.demands
    view = graph_view(instance, edge_subset=subgraph.edge_set)
    rng = random.Random(seed)
    report = CutLemmaReport()
    for d0 in demands:
        d = _as_int_demand(instance, d0)
        total = 0
        satisfied = 0
        for _, sat in enumerate_ascending_cuts(subgraph, d, cap=cap):
            total += 1
            satisfied += sat
        dist = shortest_distances(view, d.u)[d.v]
        within = dist is not None and dist <= d.delta
        all_sat = satisfied == total
        if total != ascending_cut_count(instance.n, d.delta):
            raise LemmaViolation(
                f"pair ({d.u},{d.v}): enumerated {total} cuts, "
                f"expected {ascending_cut_count(instance.n, d.delta)}"
            )
        if all_sat != within:
            raise LemmaViolation(
                f"pair ({d.u},{d.v}): all-cuts-satisfied={all_sat} but "
                f"distance {dist} vs bound {d.delta}"
            )
        report.pairs.append(
            PairCutReport(d.u, d.v, d.delta, total, satisfied, all_sat, dist, within)
        )

        # Sampled non-ascending cuts: some node column has A below B, and the
        # self-arc on that column crosses regardless of the subgraph.
        layers = d.delta + 1
        for _ in range(nonascending_samples):
            side = {
                (q, i): rng.random() < 0.5
                for q in range(instance.n)
                for i in range(layers)
            }  # True = source side A
            side[(d.u, 0)] = True
            side[(d.v, d.delta)] = False
            breaks = [
                (q, i)
                for q in range(instance.n)
                for i in range(layers - 1)
                if side[(q, i)] and not side[(q, i + 1)]
            ]
            if not breaks:
                continue  # ascending; covered exhaustively above
            q, i = breaks[0]
            if not (side[(q, i)] and not side[(q, i + 1)]):
                raise LemmaViolation("self-arc fails to cross a non-ascending cut")
            report.nonascending_sampled += 1
    return report


# ---------------------------------------------------------------------------
# Per-pair reachable subgraph


def restricted_subgraph(instance: IntegerInstance | SpannerInstance, pair):
    """Nodes and edges that can lie on some within-budget path for the pair.

    ``V_uv = {z : d(u,z) + d(z,v) <= delta}`` and
    ``E_uv = {(s,t) : d(u,s) + len(s,t) + d(t,v) <= delta}``, from one
    forward and one reverse shortest-path pass.
    """
    if isinstance(instance, SpannerInstance):
        instance = require_integer_lengths(instance)
    d = _as_int_demand(instance, pair)
    from_u = shortest_distances(graph_view(instance), d.u)
    to_v = shortest_distances(graph_view(instance, reverse=True), d.v)
    nodes = frozenset(
        z
        for z in range(instance.n)
        if from_u[z] is not None and to_v[z] is not None and from_u[z] + to_v[z] <= d.delta
    )
    edges = []
    for e in range(instance.m):
        edge = instance.edges[e]
        length = instance.lengths[e]
        ends = [(edge.u, edge.v)] if instance.directed else [(edge.u, edge.v), (edge.v, edge.u)]
        for s, t in ends:
            if (
                from_u[s] is not None
                and to_v[t] is not None
                and from_u[s] + length + to_v[t] <= d.delta
            ):
                edges.append(e)
                break
    return nodes, frozenset(edges)


# ---------------------------------------------------------------------------
# Length-encoded flow vs. edge subdivision: the fixed counterexample


@dataclass
class DemoReport:
    edge_length: int
    alpha: int
    original_optimum: Fraction
    transformed_reachable: bool
    lp_status: str
    narrative: list[str]

    def to_text(self) -> str:
        return "\n".join(self.narrative)

    def to_json(self) -> str:
        return json.dumps(
            {
                "edge_length": self.edge_length,
                "alpha": self.alpha,
                "original_optimum": str(self.original_optimum),
                "transformed_reachable": self.transformed_reachable,
                "lp_status": self.lp_status,
            },
            indent=2,
        )


def dodis_khanna_demo(edge_length: int = 3, alpha: int = 2) -> DemoReport:
    """Why subdividing long edges breaks layered-flow spanner rounding.

    The original instance is a single directed edge s->t with weight 1 and
    the given length; its stretch-alpha demand is trivially met by the edge
    itself, so the optimum is 1.  The subdivision transform replaces the edge
    by a unit-length path (weights 0,...,0,1) but keeps the demand between
    the endpoint copies at alpha.  Whenever length > alpha, the endpoint
    copies are farther apart than the demand allows, so the alpha-extension
    has no source-to-sink path at all and the flow model is infeasible --
    even though the untransformed instance is perfectly solvable.
    """
    if edge_length < 1 or alpha < 1:
        raise ValueError("edge_length and alpha must be positive")
    original = SpannerInstance(
        directed=True,
        n=2,
        edges=(Edge(0, 1, Fraction(1), Fraction(edge_length)),),
        demands=(Demand(0, 1, Fraction(alpha * edge_length)),),
        labels=("s", "t"),
    )
    original_opt = exact_optimum(original).weight

    # Subdivision: s=0, interior 1..L-1, t=L; unit lengths; weight on the last arc.
    path_n = edge_length + 1
    edges = []
    for i in range(edge_length):
        w = Fraction(1) if i == edge_length - 1 else Fraction(0)
        edges.append(Edge(i, i + 1, w, Fraction(1)))
    labels = tuple(
        "s+" if i == 0 else ("t+" if i == edge_length else f"q{i}") for i in range(path_n)
    )
    transformed = SpannerInstance(
        directed=True,
        n=path_n,
        edges=tuple(edges),
        demands=(Demand(0, edge_length, Fraction(alpha)),),
        labels=labels,
    )
    int_t = require_integer_lengths(transformed)
    ext = build_extension(int_t, alpha)
    source = ext.node_id(0, 0)
    sink = ext.node_id(edge_length, alpha)
    path = reachable_path(ext, frozenset(range(int_t.m)), source, sink)

    from .errors import SolverFailure
    from .mcf import build_mcf, solve_lp

    model = build_mcf(ext)
    try:
        solve_lp(model)
        lp_status = "optimal"
    except SolverFailure as exc:
        lp_status = exc.status

    narrative = [
        f"original: single edge s->t, weight 1, length {edge_length}, "
        f"stretch bound {alpha} x {edge_length} = {alpha * edge_length}",
        f"original optimum weight: {original_opt} (the edge itself)",
        f"transform: unit-length path of {edge_length} arcs, weights "
        f"{[str(e.weight) for e in edges]}, demand {alpha} between endpoint copies",
        f"{alpha}-extension of the transformed graph: "
        f"{ext.node_count} nodes, {len(ext.arcs)} arcs",
    ]
    if path is None:
        narrative.append(
            f"infeasible: no {ext.node_name(source)} -> {ext.node_name(sink)} path exists"
        )
    else:
        names = " -> ".join(
            [ext.node_name(source)] + [ext.node_name(ext.arcs[a].head) for a in path]
        )
        narrative.append(f"feasible: path {names}")
    narrative.append(f"flow-model status: {lp_status}")
    return DemoReport(edge_length, alpha, original_opt, path is not None, lp_status, narrative)


# ---------------------------------------------------------------------------
# Degree-potential monitor for unit-length additive demands


@dataclass
class MonitorStep:
    u: int
    v: int
    executed: bool
    delta_degree_cost: int  # change of sum of squared degrees
    delta_slack: int  # change of the distance-slack potential
    delta_potential: int  # change of (degree cost - 12 * slack)


@dataclass
class MonitorReport:
    beta: int
    steps: list[MonitorStep]
    final_degree_cost: int
    final_size: int
    size_reference: float  # n^(3/2), the target growth curve

    @property
    def max_delta_potential(self) -> int:
        return max((s.delta_potential for s in self.steps), default=0)

    def to_text(self) -> str:
        lines = [
            f"steps: {len(self.steps)} ({sum(s.executed for s in self.steps)} executed)",
            f"max potential step: {self.max_delta_potential} (must be <= 0)",
            f"final sum of squared degrees: {self.final_degree_cost}",
            f"final size: {self.final_size} vs n^1.5 = {self.size_reference:.1f}",
        ]
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "beta": self.beta,
                "executed_steps": sum(s.executed for s in self.steps),
                "max_delta_potential": self.max_delta_potential,
                "final_degree_cost": self.final_degree_cost,
                "final_size": self.final_size,
                "size_reference": self.size_reference,
            },
            indent=2,
        )


def _slack_potential(instance: SpannerInstance, d_base, d_current, beta: int) -> int:
    """Sum over ordered node pairs of max(0, d_G - d_H + beta + 3).

    Unreachable pairs in H contribute nothing (their slack is -infinity).
    """
    n = instance.n
    total = 0
    bonus = beta + 3
    for u in range(n):
        row_g = d_base[u]
        row_h = d_current[u]
        for v in range(n):
            if u == v:
                continue
            dh = row_h[v]
            if dh is None:
                continue
            term = row_g[v] - dh + bonus
            if term > 0:
                total += term
    return total


def potential_monitor(
    instance: SpannerInstance,
    trace: list[GreedyStep],
    beta: int,
) -> MonitorReport:
    """Replay greedy path additions, asserting the potential never increases.

    Requires an undirected unit-length instance whose demands are exactly
    d_G(u,v) + beta for every node pair, with integer beta >= 2.  For each
    executed step the change of (sum of squared degrees) - 12 * (distance
    slack) must be non-positive; a violation raises
    :class:`MonotonicityViolation` and indicates a bug in the greedy phase.
    """
    if instance.directed:
        raise SpannerError("potential monitor requires an undirected instance")
    if beta < 2:
        raise SpannerError("potential monitor requires integer beta >= 2")
    if any(e.length != 1 for e in instance.edges):
        raise SpannerError("potential monitor requires unit lengths")
    base_view = graph_view(instance)
    d_base = unit_all_pairs(base_view)
    if any(d is None for row in d_base for d in row):
        raise SpannerError("potential monitor requires a connected instance")
    pairs = {d.pair(False) for d in instance.demands}
    expected_pairs = {(u, v) for u in range(instance.n) for v in range(u + 1, instance.n)}
    if pairs != expected_pairs:
        raise SpannerError("potential monitor requires demands on all node pairs")
    for d in instance.demands:
        if d.delta != d_base[d.u][d.v] + beta:
            raise SpannerError(
                f"demand ({d.u},{d.v}) is {d.delta}, expected d_G + beta = "
                f"{d_base[d.u][d.v] + beta}"
            )

    chosen: set[int] = set()
    degree = [0] * instance.n
    degree_cost = 0
    d_current = [[None] * instance.n for _ in range(instance.n)]
    for q in range(instance.n):
        d_current[q][q] = 0
    slack = _slack_potential(instance, d_base, d_current, beta)

    steps: list[MonitorStep] = []
    for step in trace:
        if not step.executed or not step.new_edges:
            steps.append(MonitorStep(step.u, step.v, step.executed, 0, 0, 0))
            continue
        new_cost = degree_cost
        for e in step.new_edges:
            edge = instance.edges[e]
            for q in (edge.u, edge.v):
                new_cost += 2 * degree[q] + 1
                degree[q] += 1
            chosen.add(e)
        d_new = unit_all_pairs(graph_view(instance, edge_subset=chosen))
        new_slack = _slack_potential(instance, d_base, d_new, beta)
        delta_pot = (new_cost - 12 * new_slack) - (degree_cost - 12 * slack)
        if delta_pot > 0:
            raise MonotonicityViolation(
                f"step ({step.u},{step.v}) raised the potential by {delta_pot}"
            )
        steps.append(
            MonitorStep(
                step.u,
                step.v,
                True,
                new_cost - degree_cost,
                new_slack - slack,
                delta_pot,
            )
        )
        degree_cost, slack, d_current = new_cost, new_slack, d_new
    return MonitorReport(
        beta,
        steps,
        degree_cost,
        len(chosen),
        instance.n ** 1.5,
    )
