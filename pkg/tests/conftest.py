"""Shared independent oracles for the test suite.

These deliberately avoid the library's own shortest-path and search code so
that tests compare against a second, dumber route to the same answer.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from spannerkit.graph import GraphView


def bellman_ford(view: GraphView, source: int) -> list:
    """Textbook relaxation loop; exact arithmetic; None = unreachable."""
    dist: list = [None] * view.n
    dist[source] = 0
    arcs = [
        (tail, head, length)
        for tail in range(view.n)
        for head, length, _ in view.out[tail]
    ]
    for _ in range(view.n - 1):
        changed = False
        for tail, head, length in arcs:
            if dist[tail] is None:
                continue
            cand = dist[tail] + length
            if dist[head] is None or cand < dist[head]:
                dist[head] = cand
                changed = True
        if not changed:
            break
    return dist


def all_simple_paths(view: GraphView, source: int, target: int, limit: int = 10**6):
    """Every simple path as (length, node tuple); exponential, tiny graphs only."""
    results = []
    stack = [(source, (source,), 0)]
    while stack:
        node, path, length = stack.pop()
        if node == target:
            results.append((length, path))
            continue
        if len(results) > limit:
            raise RuntimeError("too many paths")
        for head, arc_len, _ in view.out[node]:
            if head not in path:
                stack.append((head, path + (head,), length + arc_len))
    return results


def brute_force_lex_shortest(view: GraphView, source: int, target: int):
    """(distance, lexicographically smallest shortest node sequence) or None."""
    paths = all_simple_paths(view, source, target)
    if not paths:
        return None
    best = min(length for length, _ in paths)
    seqs = sorted(path for length, path in paths if length == best)
    return best, seqs[0]


def brute_force_optimum(instance, demands=None) -> tuple[Fraction, tuple[int, ...]] | None:
    """Minimum-weight feasible subset by full enumeration (m <= ~14)."""
    from spannerkit.graph import verify_feasible
    from spannerkit.instance import Subgraph

    m = instance.m
    best = None
    for k in range(m + 1):
        for subset in combinations(range(m), k):
            sub = Subgraph(instance, frozenset(subset))
            if verify_feasible(sub, demands).feasible:
                key = (sub.weight, subset)
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    return best
