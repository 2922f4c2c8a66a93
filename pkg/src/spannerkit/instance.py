"""Problem instances, validation, and the on-disk interchange format.

An instance is a simple connected graph (directed or undirected) whose edges
carry an independent non-negative weight and positive length, plus a list of
terminal pairs with positive distance demands.  A candidate solution is a
:class:`Subgraph`: a subset of the instance's edges.

Interchange format (JSON, one document per file)::

    {
      "directed": false,
      "n": 3,
      "edges":   [{"u": 0, "v": 1, "w": "5", "len": "1"}, ...],
      "demands": [{"u": 0, "v": 1, "delta": "3"}, ...],
      "labels":  ["a", "b", "c"]          # optional
    }

Rationals are serialized as ``"p/q"`` strings (``"p"`` alone means
denominator 1).  Canonical form sorts edges and demands by ``(u, v)`` with
undirected endpoints normalized to ``u < v``; two equal instances therefore
produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInstance, NonIntegerLength, ParseError
from .rational import format_rational, is_integer, parse_rational


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: Fraction
    length: Fraction


@dataclass(frozen=True)
class Demand:
    u: int
    v: int
    delta: Fraction

    def pair(self, directed: bool) -> tuple[int, int]:
        """The pair key; undirected demands are unordered."""
        if directed or self.u <= self.v:
            return (self.u, self.v)
        return (self.v, self.u)


@dataclass(frozen=True)
class SpannerInstance:
    """Immutable problem instance. Safe for concurrent reads once built."""

    directed: bool
    n: int
    edges: tuple[Edge, ...]
    demands: tuple[Demand, ...]
    labels: tuple[str, ...] | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def lengths(self) -> tuple[Fraction, ...]:
        return tuple(e.length for e in self.edges)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(e.weight for e in self.edges)

    def label(self, node: int) -> str:
        if self.labels is not None and 0 <= node < len(self.labels):
            return self.labels[node]
        return str(node)

    def node_by_label(self, label: str) -> int:
        if self.labels is None:
            raise KeyError(label)
        return self.labels.index(label)

    def canonical(self) -> "SpannerInstance":
        """Sorted edges/demands with undirected endpoints normalized u < v."""
        edges = []
        for e in self.edges:
            u, v = e.u, e.v
            if not self.directed and u > v:
                u, v = v, u
            edges.append(Edge(u, v, Fraction(e.weight), Fraction(e.length)))
        edges.sort(key=lambda e: (e.u, e.v))
        demands = []
        for d in self.demands:
            u, v = d.pair(self.directed)
            demands.append(Demand(u, v, Fraction(d.delta)))
        demands.sort(key=lambda d: (d.u, d.v))
        return SpannerInstance(self.directed, self.n, tuple(edges), tuple(demands), self.labels)


@dataclass(frozen=True)
class Subgraph:
    """An edge subset of an instance: a candidate spanner."""

    instance: SpannerInstance
    edge_set: frozenset[int]

    @property
    def weight(self) -> Fraction:
        return sum((self.instance.edges[i].weight for i in self.edge_set), Fraction(0))

    @property
    def size(self) -> int:
        return len(self.edge_set)

    def edge_pairs(self) -> list[tuple[int, int]]:
        return sorted((self.instance.edges[i].u, self.instance.edges[i].v) for i in self.edge_set)


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str) -> None:
        self.violations.append(Violation(code, message))

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def describe(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"  [{v.code}] {v.message}" for v in self.violations)

    def raise_if_invalid(self) -> None:
        if not self.ok:
            raise InvalidInstance(self)


def validate(instance: SpannerInstance) -> ValidationReport:
    """Check every instance invariant and report all violations found.

    An instance with an empty report is accepted by every solver.  Demands
    whose bound is below the shortest achievable distance are rejected here
    (rather than silently dropped), as are demands beyond ``n * max_length``
    (those are equivalent to plain reachability and would blow up the layered
    extension for no benefit).
    """
    report = ValidationReport()
    if instance.n <= 0:
        report.add("bad-node-count", f"node count must be positive, got {instance.n}")
        return report
    if instance.labels is not None and len(instance.labels) != instance.n:
        report.add("bad-labels", f"{len(instance.labels)} labels for {instance.n} nodes")

    seen_pairs: set[tuple[int, int]] = set()
    ids_ok = True
    for i, e in enumerate(instance.edges):
        if not (0 <= e.u < instance.n and 0 <= e.v < instance.n):
            report.add("bad-node-id", f"edge {i} endpoints ({e.u},{e.v}) outside [0,{instance.n})")
            ids_ok = False
            continue
        if e.u == e.v:
            report.add("self-loop", f"edge {i} is a self-loop at node {e.u}")
        key = (e.u, e.v) if instance.directed or e.u <= e.v else (e.v, e.u)
        if key in seen_pairs:
            report.add("duplicate-edge", f"edge {i} duplicates pair {key}")
        seen_pairs.add(key)
        if e.weight < 0:
            report.add("negative-weight", f"edge {i} has weight {format_rational(e.weight)} < 0")
        if e.length <= 0:
            report.add("nonpositive-length", f"edge {i} has length {format_rational(e.length)} <= 0")

    seen_demands: set[tuple[int, int]] = set()
    for i, d in enumerate(instance.demands):
        if not (0 <= d.u < instance.n and 0 <= d.v < instance.n):
            report.add("bad-node-id", f"demand {i} endpoints ({d.u},{d.v}) outside [0,{instance.n})")
            ids_ok = False
            continue
        if d.u == d.v:
            report.add("self-demand", f"demand {i} pairs node {d.u} with itself")
            continue
        key = d.pair(instance.directed)
        if key in seen_demands:
            report.add("duplicate-demand", f"demand {i} duplicates pair {key}")
        seen_demands.add(key)
        if d.delta <= 0:
            report.add("nonpositive-demand", f"demand {i} has bound {format_rational(d.delta)} <= 0")

    if not ids_ok or report.codes() & {"nonpositive-length", "self-loop"}:
        return report  # distance checks below would be meaningless

    # Structural connectivity, then per-demand satisfiability (delta >= d_G).
    from .graph import graph_view, shortest_distances

    view = graph_view(instance)
    if not instance.directed:
        dist0 = shortest_distances(view, 0)
        unreachable = [q for q in range(instance.n) if dist0[q] is None]
        if unreachable:
            report.add("not-connected", f"nodes {unreachable} unreachable from node 0")

    max_len = max((e.length for e in instance.edges), default=Fraction(0))
    budget_cap = instance.n * max_len
    by_source: dict[int, list] = {}
    for d in instance.demands:
        if d.u == d.v:
            continue
        by_source.setdefault(d.u, [])
    for u in by_source:
        by_source[u] = shortest_distances(view, u)
    for d in instance.demands:
        if d.u == d.v:
            continue
        dist = by_source[d.u][d.v]
        if dist is None or dist > d.delta:
            got = "unreachable" if dist is None else format_rational(dist)
            report.add(
                "unsatisfiable-demand",
                f"demand ({d.u},{d.v}) asks for {format_rational(d.delta)} "
                f"but the graph only achieves {got}",
            )
        if d.delta > budget_cap:
            report.add(
                "oversized-demand",
                f"demand ({d.u},{d.v}) bound {format_rational(d.delta)} exceeds "
                f"n*max_length = {format_rational(budget_cap)}; cap it there (same feasible set)",
            )
    return report


# ---------------------------------------------------------------------------
# Integer-length view


@dataclass(frozen=True)
class IntDemand:
    u: int
    v: int
    delta: int

    def pair(self, directed: bool) -> tuple[int, int]:
        if directed or self.u <= self.v:
            return (self.u, self.v)
        return (self.v, self.u)


@dataclass(frozen=True)
class IntegerInstance:
    """View of an instance with integer lengths and floored integer demands.

    With integer lengths every achievable distance is an integer, so flooring
    fractional demands loses nothing.  Required by the layered-extension LP.
    """

    base: SpannerInstance
    lengths: tuple[int, ...]
    demands: tuple[IntDemand, ...]
    delta_bar: int

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def directed(self) -> bool:
        return self.base.directed

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.base.edges


def require_integer_lengths(instance: SpannerInstance) -> IntegerInstance:
    """Check all lengths are integers; floor demands; compute max demand.

    Raises :class:`NonIntegerLength` naming the first offending edge.
    """
    lengths = []
    for i, e in enumerate(instance.edges):
        if not is_integer(e.length):
            raise NonIntegerLength(i, format_rational(e.length))
        lengths.append(int(e.length))
    demands = tuple(IntDemand(d.u, d.v, math.floor(d.delta)) for d in instance.demands)
    delta_bar = max((d.delta for d in demands), default=0)
    return IntegerInstance(instance, tuple(lengths), demands, delta_bar)


# ---------------------------------------------------------------------------
# Interchange format


def to_json_dict(instance: SpannerInstance) -> dict:
    inst = instance.canonical()
    doc: dict = {
        "directed": inst.directed,
        "n": inst.n,
        "edges": [
            {"u": e.u, "v": e.v, "w": format_rational(e.weight), "len": format_rational(e.length)}
            for e in inst.edges
        ],
        "demands": [
            {"u": d.u, "v": d.v, "delta": format_rational(d.delta)} for d in inst.demands
        ],
    }
    if inst.labels is not None:
        doc["labels"] = list(inst.labels)
    return doc


def from_json_dict(doc: dict, *, path: str | None = None) -> SpannerInstance:
    try:
        directed = bool(doc["directed"])
        n = int(doc["n"])
        raw_edges = doc["edges"]
        raw_demands = doc["demands"]
    except KeyError as exc:
        raise ParseError(f"missing required key {exc.args[0]!r}", path=path) from None
    edges = []
    for i, e in enumerate(raw_edges):
        try:
            edges.append(
                Edge(
                    int(e["u"]),
                    int(e["v"]),
                    parse_rational(e["w"], field=f"edges[{i}].w"),
                    parse_rational(e["len"], field=f"edges[{i}].len"),
                )
            )
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"malformed edge record {i}", path=path) from None
    demands = []
    for i, d in enumerate(raw_demands):
        try:
            demands.append(
                Demand(int(d["u"]), int(d["v"]), parse_rational(d["delta"], field=f"demands[{i}].delta"))
            )
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"malformed demand record {i}", path=path) from None
    labels = tuple(doc["labels"]) if "labels" in doc and doc["labels"] is not None else None
    return SpannerInstance(directed, n, tuple(edges), tuple(demands), labels).canonical()


def save(instance: SpannerInstance, path: str) -> None:
    """Write the canonical form; deterministic byte-for-byte."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(instance), fh, indent=2)
        fh.write("\n")


def load(path: str) -> SpannerInstance:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}", path=path) from None
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object", path=path)
    return from_json_dict(doc, path=path)
