"""Batch experiments: run (instance x algorithm x trial) cells, collect metrics.

A fully-seeded :class:`ExperimentConfig` determines every instance and every
random decision, so reruns reproduce the same solutions; only the wall-time
column varies between runs.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .errors import SpannerError, TooLarge
from .generators import random_instance
from .graph import minimum_spanning_tree, verify_feasible
from .greedy import augmented_greedy, greedy
from .instance import SpannerInstance, Subgraph, validate
from .oracles import exact_optimum
from .rational import format_rational
from .rounding import solve_randomized

CSV_COLUMNS = [
    "instance",
    "algorithm",
    "trial",
    "feasible",
    "weight",
    "size",
    "lightness",
    "ratio",
    "w_star",
    "high_weight_edges",
    "gamma",
    "attempts",
    "wall_time_s",
]

ALGORITHMS = ("greedy", "augmented-greedy", "randomized-rounding", "exact")


@dataclass
class MetricsRow:
    instance: str
    algorithm: str
    trial: int
    feasible: bool
    weight: str  # exact rational text
    size: int
    lightness: str = ""  # undirected instances only
    ratio: str = ""  # only when the exact optimum was computed
    w_star: str = ""
    high_weight_edges: str = ""
    gamma: str = ""
    attempts: str = ""
    wall_time_s: str = ""

    def as_list(self) -> list:
        data = asdict(self)
        return [data[c] for c in CSV_COLUMNS]


@dataclass
class ExperimentConfig:
    family: str = "decoupled"
    n: int = 7
    m: int = 12
    instances: int = 5
    seed: int = 0
    demand_family: str = "freeform"
    demand_pairs: str = "random"
    num_demands: int | None = None
    alpha: int = 3
    beta: int = 2
    freeform_factor: int = 2
    integer_lengths: bool = True
    directed: bool = False
    algorithms: list[str] = field(default_factory=lambda: ["augmented-greedy"])
    trials: int = 1
    mst_lift: bool = False
    gamma_mode: str = "global"
    confidence: float = 2.0  # used only by gamma_mode == "custom"
    max_attempts: int = 10
    exact: bool = False
    exact_cap: int = 22
    threads: int = 1

    @classmethod
    def from_json(cls, path: str) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise SpannerError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)


def run_algorithm(
    instance: SpannerInstance,
    algorithm: str,
    *,
    mst_lift: bool = False,
    gamma_mode: str = "global",
    confidence: float = 2.0,
    max_attempts: int = 10,
    seed: int = 0,
    exact_cap: int = 22,
    backend: str = "bundled",
):
    """Dispatch one solver; returns (Subgraph, info dict)."""
    info: dict = {}
    if algorithm == "greedy":
        sub = greedy(instance)
    elif algorithm == "augmented-greedy":
        sub, report = augmented_greedy(instance, mst_lift=mst_lift)
        info["w_star"] = format_rational(report.w_star)
        info["high_weight_edges"] = str(report.high_weight_edge_count)
    elif algorithm == "randomized-rounding":
        sub, report = solve_randomized(
            instance,
            mode=gamma_mode,
            seed=seed,
            max_attempts=max_attempts,
            backend=backend,
            confidence=confidence if gamma_mode == "custom" else None,
        )
        info["gamma"] = f"{report.gamma.value:.6f}"
        info["attempts"] = str(len(report.attempts))
        info["rounding_feasible"] = report.feasible
    elif algorithm == "exact":
        result = exact_optimum(instance, max_edges=exact_cap)
        sub = Subgraph(instance, result.edge_set)
    else:
        raise SpannerError(f"unknown algorithm {algorithm!r}; have {ALGORITHMS}")
    return sub, info


def _run_cell(args) -> MetricsRow:
    config, index, algorithm, trial = args
    instance = random_instance(
        config.family,
        config.n,
        config.m,
        config.seed * 10_000 + index,
        demand_family=config.demand_family,
        demand_pairs=config.demand_pairs,
        num_demands=config.num_demands,
        alpha=config.alpha,
        beta=config.beta,
        freeform_factor=config.freeform_factor,
        integer_lengths=config.integer_lengths,
        directed=config.directed,
    )
    name = f"{config.family}-{config.n}x{config.m}-s{config.seed}-{index}"
    t0 = time.perf_counter()
    try:
        sub, info = run_algorithm(
            instance,
            algorithm,
            mst_lift=config.mst_lift,
            gamma_mode=config.gamma_mode,
            confidence=config.confidence,
            max_attempts=config.max_attempts,
            seed=config.seed * 100_003 + index * 101 + trial,
            exact_cap=config.exact_cap,
        )
    except SpannerError as exc:
        return MetricsRow(
            instance=name,
            algorithm=algorithm,
            trial=trial,
            feasible=False,
            weight="",
            size=0,
            wall_time_s=f"{time.perf_counter() - t0:.4f}",
            attempts=type(exc).__name__,
        )
    elapsed = time.perf_counter() - t0
    feasible = verify_feasible(sub).feasible  # independent re-check, never trusted
    row = MetricsRow(
        instance=name,
        algorithm=algorithm,
        trial=trial,
        feasible=feasible,
        weight=format_rational(sub.weight),
        size=sub.size,
        wall_time_s=f"{elapsed:.4f}",
        w_star=info.get("w_star", ""),
        high_weight_edges=info.get("high_weight_edges", ""),
        gamma=info.get("gamma", ""),
        attempts=info.get("attempts", ""),
    )
    if not instance.directed:
        mst_weight, _ = minimum_spanning_tree(instance)
        if mst_weight > 0:
            row.lightness = f"{float(sub.weight / mst_weight):.6f}"
    if config.exact and algorithm != "exact":
        try:
            opt = exact_optimum(instance, max_edges=config.exact_cap)
            if opt.weight > 0:
                row.ratio = f"{float(sub.weight / opt.weight):.6f}"
            else:
                row.ratio = "inf" if sub.weight > 0 else "1.0"
        except TooLarge:
            pass
    return row


def run_experiment(config: ExperimentConfig) -> list[MetricsRow]:
    cells = [
        (config, index, algorithm, trial)
        for index in range(config.instances)
        for algorithm in config.algorithms
        for trial in range(max(1, config.trials))
    ]
    if config.trials == 0:
        return []
    # Validate the generator once up front so bad configs fail loudly.
    probe = random_instance(
        config.family,
        config.n,
        config.m,
        config.seed * 10_000,
        demand_family=config.demand_family,
        demand_pairs=config.demand_pairs,
        num_demands=config.num_demands,
        alpha=config.alpha,
        beta=config.beta,
        freeform_factor=config.freeform_factor,
        integer_lengths=config.integer_lengths,
        directed=config.directed,
    )
    validate(probe).raise_if_invalid()
    if config.threads > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(_run_cell, cells))
    else:
        rows = [_run_cell(cell) for cell in cells]
    return rows


def rows_to_csv(rows: list[MetricsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.as_list())
    return buf.getvalue()


def rows_to_json(rows: list[MetricsRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2)


def summarize(rows: list[MetricsRow]) -> dict:
    """Aggregate feasibility rate, ratio stats, and timings per algorithm."""
    out: dict = {}
    for row in rows:
        agg = out.setdefault(
            row.algorithm,
            {"cells": 0, "feasible": 0, "max_ratio": 0.0, "mean_ratio": 0.0,
             "_ratios": [], "_times": []},
        )
        agg["cells"] += 1
        agg["feasible"] += bool(row.feasible)
        if row.ratio and row.ratio != "inf":
            agg["_ratios"].append(float(row.ratio))
        if row.wall_time_s:
            agg["_times"].append(float(row.wall_time_s))
    for agg in out.values():
        ratios = agg.pop("_ratios")
        times = agg.pop("_times")
        if ratios:
            agg["max_ratio"] = max(ratios)
            agg["mean_ratio"] = sum(ratios) / len(ratios)
        else:
            agg.pop("max_ratio")
            agg.pop("mean_ratio")
        if times:
            agg["mean_time_s"] = sum(times) / len(times)
            agg["max_time_s"] = max(times)
        agg["feasible_rate"] = agg["feasible"] / agg["cells"]
    return out
