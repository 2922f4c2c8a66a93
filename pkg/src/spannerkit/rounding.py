"""Randomized rounding of the fractional flow solution.

Each edge joins the spanner independently with probability
``min(1, gamma * x_e)``.  The inflation factor gamma is
``ln(n * C * |K|)`` where C bounds the number of ascending cuts any pair can
have: globally ``(delta_bar + 2)^(n-2)``, or per pair over just the nodes
that can lie on a within-budget path (restricted mode), which is never
larger.  C overflows immediately, so everything is computed in log space.

Randomness is counter-based: the uniform draw for edge e is a keyed hash of
(seed, e), so runs are reproducible bit-for-bit and edges could be sampled in
any order or in parallel.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SpannerError
from .extension import build_extension
from .graph import Verdict, verify_feasible
from .instance import IntegerInstance, SpannerInstance, Subgraph, require_integer_lengths
from .mcf import FractionalSolution, build_mcf, solve_lp


@dataclass(frozen=True)
class GammaSpec:
    mode: str  # "global" | "restricted" | "custom"
    value: float
    n: int
    num_pairs: int
    log_cut_bound: float  # ln of the ascending-cut count bound used
    confidence: float | None = None  # custom mode: replaces n in the union bound


def gamma(instance: IntegerInstance | SpannerInstance, mode: str = "global", *, confidence: float | None = None) -> GammaSpec:
    """Rounding inflation factor, computed in log space.

    ``global``      uses the cut bound (delta(u,v)+2)^(n-2) maximized over pairs.
    ``restricted``  replaces n by the per-pair reachable-subgraph size n_uv.
    ``custom``      is restricted with a caller-supplied confidence multiplier
                    c replacing n: failure probability at most 1/c per run.
    """
    if isinstance(instance, SpannerInstance):
        instance = require_integer_lengths(instance)
    n = instance.n
    pairs = instance.demands
    k = len(pairs)
    if k == 0:
        return GammaSpec(mode, 0.0, n, 0, 0.0, confidence)
    if mode == "global":
        log_c = max((n - 2) * math.log(d.delta + 2) for d in pairs)
        lead = math.log(n)
    elif mode in ("restricted", "custom"):
        from .oracles import restricted_subgraph

        log_c = 0.0
        for d in pairs:
            nodes, _ = restricted_subgraph(instance, d)
            log_c = max(log_c, (len(nodes) - 2) * math.log(d.delta + 2))
        if mode == "restricted":
            lead = math.log(n)
        else:
            if confidence is None or confidence <= 1:
                raise ValueError("custom mode needs a confidence multiplier > 1")
            lead = math.log(confidence)
    else:
        raise ValueError(f"unknown gamma mode {mode!r}")
    return GammaSpec(mode, lead + log_c + math.log(k), n, k, log_c, confidence)


def _uniform(seed: int, counter: int) -> float:
    """Deterministic uniform in [0, 1) from a keyed 64-bit hash."""
    key = (seed & (2**64 - 1)).to_bytes(8, "little")
    data = counter.to_bytes(8, "little", signed=False)
    digest = hashlib.blake2b(data, digest_size=8, key=key).digest()
    return int.from_bytes(digest, "little") / 2**64


def derive_seed(master: int, stream: bytes, index: int) -> int:
    key = (master & (2**64 - 1)).to_bytes(8, "little")
    digest = hashlib.blake2b(stream + index.to_bytes(8, "little"), digest_size=8, key=key).digest()
    return int.from_bytes(digest, "little")


@dataclass
class RoundingRun:
    seed: int
    chosen_edges: tuple[int, ...]
    weight: Fraction
    verdict: Verdict
    attempt: int = 0

    @property
    def feasible(self) -> bool:
        return self.verdict.feasible


def round_solution(solution: FractionalSolution, spec: GammaSpec, seed: int) -> RoundingRun:
    """One independent rounding pass; same (solution, spec, seed) -> same set."""
    inst = solution.model.extension.base
    chosen = []
    for e in range(inst.m):
        p = min(1.0, spec.value * float(solution.x[e]))
        if _uniform(seed, e) < p:
            chosen.append(e)
    sub = Subgraph(inst.base, frozenset(chosen))
    verdict = verify_feasible(sub, inst.demands)
    weight = sum((inst.edges[e].weight for e in chosen), Fraction(0))
    return RoundingRun(seed, tuple(sorted(chosen)), weight, verdict)


@dataclass
class RandomizedRoundingReport:
    gamma: GammaSpec
    lp_objective: float
    attempts: list[RoundingRun] = field(default_factory=list)
    accepted_attempt: int | None = None  # index into attempts, None if all failed

    @property
    def feasible(self) -> bool:
        return self.accepted_attempt is not None

    @property
    def attempt_weights(self) -> list[Fraction]:
        """Unconditional per-attempt weights, accepted or not."""
        return [run.weight for run in self.attempts]

    def describe(self) -> str:
        lines = [
            f"gamma ({self.gamma.mode}): {self.gamma.value:.6f}",
            f"LP objective: {self.lp_objective:.6f}",
            f"attempts: {len(self.attempts)}",
        ]
        if self.feasible:
            run = self.attempts[self.accepted_attempt]
            lines.append(f"accepted attempt {self.accepted_attempt}: weight {run.weight}")
        else:
            lines.append("no feasible rounding; last verdict:")
            lines.append(self.attempts[-1].verdict.describe())
        return "\n".join(lines)


def solve_randomized(
    instance: SpannerInstance,
    *,
    mode: str = "global",
    seed: int = 0,
    max_attempts: int = 10,
    backend: str = "bundled",
    confidence: float | None = None,
) -> tuple[Subgraph, RandomizedRoundingReport]:
    """Full pipeline: one LP solve, then up to ``max_attempts`` roundings.

    Attempts reuse the single fractional solution with independently derived
    seeds; the first exactly-verified feasible one is returned.  If all fail,
    the last attempt comes back flagged infeasible with the violated pairs in
    its verdict.  Requires integer lengths.
    """
    if max_attempts < 1:
        raise ValueError("max_attempts must be at least 1")
    int_inst = require_integer_lengths(instance)
    spec = gamma(int_inst, mode, confidence=confidence)
    if not int_inst.demands:
        report = RandomizedRoundingReport(spec, 0.0)
        empty = RoundingRun(seed, (), Fraction(0), Verdict(True, []))
        report.attempts.append(empty)
        report.accepted_attempt = 0
        return Subgraph(instance, frozenset()), report

    extension = build_extension(int_inst)
    model = build_mcf(extension)
    solution = solve_lp(model, backend=backend)
    report = RandomizedRoundingReport(spec, solution.objective)
    last: RoundingRun | None = None
    for attempt in range(max_attempts):
        run = round_solution(solution, spec, derive_seed(seed, b"attempt", attempt))
        run.attempt = attempt
        report.attempts.append(run)
        last = run
        if run.feasible:
            report.accepted_attempt = attempt
            return Subgraph(instance, frozenset(run.chosen_edges)), report
    assert last is not None
    return Subgraph(instance, frozenset(last.chosen_edges)), report


class RoundingInfeasible(SpannerError):
    """Raised by callers that require a feasible rounded spanner."""

    def __init__(self, report: RandomizedRoundingReport):
        self.report = report
        super().__init__("all rounding attempts infeasible:\n" + report.describe())
