"""Deterministic shortest paths, spanning trees, and feasibility checks.

All arithmetic is exact (ints or fractions).  Unreachable is represented by
``None``, never by a large number.

Tie-break contract: among all shortest paths from the source to a node, the
one whose node sequence is lexicographically smallest wins.  This makes every
shortest-path tree (and therefore every greedy run) reproducible without
perturbing lengths.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import DirectedInstance, SpannerError
from .instance import Demand, SpannerInstance, Subgraph


class GraphView:
    """Adjacency over a fixed arc list ``(tail, head, length, edge_index)``.

    Undirected instances are bi-directed: each edge contributes one arc per
    direction, both carrying the original edge index.
    """

    __slots__ = ("n", "out")

    def __init__(self, n: int, arcs):
        self.n = n
        self.out: list[list[tuple[int, object, int]]] = [[] for _ in range(n)]
        for tail, head, length, edge_index in arcs:
            self.out[tail].append((head, length, edge_index))


def graph_view(inst, *, edge_subset=None, reverse: bool = False) -> GraphView:
    """View of a SpannerInstance or IntegerInstance, optionally edge-restricted.

    ``reverse=True`` flips every arc (used for distances *to* a target in
    directed graphs).
    """
    lengths = inst.lengths
    arcs = []
    for i, e in enumerate(inst.edges):
        if edge_subset is not None and i not in edge_subset:
            continue
        u, v, ln = e.u, e.v, lengths[i]
        if reverse:
            u, v = v, u
        arcs.append((u, v, ln, i))
        if not inst.directed:
            arcs.append((v, u, ln, i))
    return GraphView(inst.n, arcs)


def demand_graph_view(instance: SpannerInstance, *, skip: int | None = None) -> GraphView:
    """The demand graph: nodes V, one arc per terminal pair weighted by its bound.

    ``skip`` omits the demand at that index (for the metric-pair reduction).
    """
    arcs = []
    for i, d in enumerate(instance.demands):
        if i == skip:
            continue
        arcs.append((d.u, d.v, d.delta, i))
        if not instance.directed:
            arcs.append((d.v, d.u, d.delta, i))
    return GraphView(instance.n, arcs)


@dataclass
class ShortestPathResult:
    source: int
    dist: list  # Fraction | int | None per node
    parent_edge: list  # edge index | None
    parent_node: list  # node id | None
    sequence: list  # tuple of node ids | None; the tie-broken path

    def path_nodes(self, target: int) -> tuple[int, ...] | None:
        if self.dist[target] is None:
            return None
        return self.sequence[target]

    def path_edges(self, target: int) -> tuple[int, ...] | None:
        if self.dist[target] is None:
            return None
        edges = []
        q = target
        while q != self.source:
            edges.append(self.parent_edge[q])
            q = self.parent_node[q]
        edges.reverse()
        return tuple(edges)


def dijkstra(view: GraphView, source: int) -> ShortestPathResult:
    """Exact Dijkstra with the lexicographic tie-break contract.

    Heap keys are ``(dist, node_sequence)``; since all lengths are positive,
    every node on a shortest path is strictly closer than its successor, so a
    popped node's sequence is final and the parent tree is unique.
    """
    n = view.n
    dist: list = [None] * n
    seq: list = [None] * n
    parent_edge: list = [None] * n
    parent_node: list = [None] * n
    done = [False] * n
    dist[source] = 0
    seq[source] = (source,)
    heap = [(0, (source,), source)]
    while heap:
        d, s, q = heapq.heappop(heap)
        if done[q]:
            continue
        done[q] = True
        for head, length, edge_index in view.out[q]:
            if done[head]:
                continue
            nd = d + length
            ns = s + (head,)
            cur = dist[head]
            if cur is None or nd < cur or (nd == cur and ns < seq[head]):
                dist[head] = nd
                seq[head] = ns
                parent_edge[head] = edge_index
                parent_node[head] = q
                heapq.heappush(heap, (nd, ns, head))
    return ShortestPathResult(source, dist, parent_edge, parent_node, seq)


def shortest_distances(view: GraphView, source: int) -> list:
    """Distances only; same algorithm, skips sequence bookkeeping."""
    n = view.n
    dist: list = [None] * n
    done = [False] * n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, q = heapq.heappop(heap)
        if done[q]:
            continue
        done[q] = True
        for head, length, _ in view.out[q]:
            nd = d + length
            if not done[head] and (dist[head] is None or nd < dist[head]):
                dist[head] = nd
                heapq.heappush(heap, (nd, head))
    return dist


def unit_all_pairs(view: GraphView) -> list[list]:
    """All-pairs distances by BFS; valid only when every arc has length 1."""
    from collections import deque

    n = view.n
    table = []
    for s in range(n):
        dist: list = [None] * n
        dist[s] = 0
        dq = deque([s])
        while dq:
            q = dq.popleft()
            for head, _, _ in view.out[q]:
                if dist[head] is None:
                    dist[head] = dist[q] + 1
                    dq.append(head)
        table.append(dist)
    return table


# ---------------------------------------------------------------------------
# Minimum spanning tree


def minimum_spanning_tree(instance: SpannerInstance) -> tuple[Fraction, frozenset[int]]:
    """Kruskal with (weight, edge index) tie-break; exact weight.

    Raises :class:`DirectedInstance` for directed input and
    :class:`SpannerError` if the graph is disconnected.
    """
    if instance.directed:
        raise DirectedInstance("minimum spanning tree requires an undirected instance")
    parent = list(range(instance.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen: list[int] = []
    total = Fraction(0)
    order = sorted(range(instance.m), key=lambda i: (instance.edges[i].weight, i))
    for i in order:
        e = instance.edges[i]
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            continue
        parent[ru] = rv
        chosen.append(i)
        total += e.weight
        if len(chosen) == instance.n - 1:
            break
    if len(chosen) != instance.n - 1:
        raise SpannerError("graph is disconnected; no spanning tree exists")
    return total, frozenset(chosen)


# ---------------------------------------------------------------------------
# Metric terminal pairs


def reduce_to_metric_pairs(instance: SpannerInstance) -> tuple[Demand, ...]:
    """Keep exactly the demands not dominated by a path of other demands.

    A pair (u,v) is *metric* when, in the demand graph with that one demand
    removed, the u-v distance w.r.t. the demand bounds exceeds delta(u,v).
    A subgraph is feasible for all demands iff it is feasible for the metric
    ones, so solvers may restrict attention to the returned subset.
    """
    kept = []
    for i, d in enumerate(instance.demands):
        view = demand_graph_view(instance, skip=i)
        dist = shortest_distances(view, d.u)[d.v]
        if dist is None or dist > d.delta:
            kept.append(d)
    return tuple(kept)


# ---------------------------------------------------------------------------
# Feasibility


@dataclass(frozen=True)
class PairViolation:
    u: int
    v: int
    delta: Fraction
    achieved: object  # distance | None if unreachable


@dataclass
class Verdict:
    feasible: bool
    violations: list[PairViolation]

    def describe(self) -> str:
        if self.feasible:
            return "feasible"
        lines = []
        for v in self.violations:
            got = "unreachable" if v.achieved is None else str(v.achieved)
            lines.append(f"  pair ({v.u},{v.v}): needs <= {v.delta}, achieved {got}")
        return "infeasible:\n" + "\n".join(lines)


def verify_feasible(subgraph: Subgraph, demands=None) -> Verdict:
    """Exact check that every demand pair meets its bound in the subgraph.

    ``demands`` defaults to the instance's own list; pass a subset (e.g. the
    metric pairs) to check against that instead.
    """
    instance = subgraph.instance
    if demands is None:
        demands = instance.demands
    view = graph_view(instance, edge_subset=subgraph.edge_set)
    by_source: dict[int, list] = {}
    violations = []
    for d in demands:
        if d.u == d.v:
            continue
        if d.u not in by_source:
            by_source[d.u] = shortest_distances(view, d.u)
        achieved = by_source[d.u][d.v]
        if achieved is None or achieved > d.delta:
            violations.append(PairViolation(d.u, d.v, d.delta, achieved))
    return Verdict(not violations, violations)
