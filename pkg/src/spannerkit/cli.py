"""Command-line front end.

Subcommands: gen, solve, verify, bench, oracle (exact | cuts | demo |
potential), export-lp.  Exit codes: 0 success, 2 validation failure,
3 infeasible after retries, 4 internal assertion (lemma violation).

Solution files are deterministic given identical inputs and seeds; timing
lives only in the metrics CSV.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bench as bench_mod
from .errors import (
    InvalidInstance,
    LemmaViolation,
    MonotonicityViolation,
    SpannerError,
)
from .extension import build_extension
from .generators import (
    DEMAND_FAMILIES,
    FIXED_INSTANCES,
    WEIGHT_FAMILIES,
    fixed_instance,
    random_instance,
)
from .graph import minimum_spanning_tree, verify_feasible
from .greedy import augmented_greedy
from .instance import Subgraph, load, require_integer_lengths, save, validate
from .mcf import build_mcf, export_lp
from .oracles import (
    check_cut_lemma,
    dodis_khanna_demo,
    exact_optimum,
    potential_monitor,
)
from .rational import format_rational

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_ASSERTION = 4


def _write_solution(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _solution_payload(algorithm: str, sub: Subgraph, feasible: bool, params: dict) -> dict:
    return {
        "algorithm": algorithm,
        "feasible": feasible,
        "weight": format_rational(sub.weight),
        "size": sub.size,
        "edge_indices": sorted(sub.edge_set),
        "edges": sub.edge_pairs(),
        "params": params,
    }


def _load_validated(path: str):
    instance = load(path)
    report = validate(instance)
    if not report.ok:
        print(f"validation failed for {path}:", file=sys.stderr)
        print(report.describe(), file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)
    return instance


def cmd_gen(args) -> int:
    if args.family in FIXED_INSTANCES:
        instance = fixed_instance(args.family)
    else:
        instance = random_instance(
            args.family,
            args.n,
            args.m if args.m is not None else 2 * args.n,
            args.seed,
            demand_family=args.demands,
            demand_pairs=args.demand_pairs,
            num_demands=args.num_demands,
            alpha=args.alpha,
            beta=args.beta,
            freeform_factor=args.freeform_factor,
            integer_lengths=args.integer_lengths,
            directed=args.directed,
        )
    report = validate(instance)
    if not report.ok:
        print("generated instance failed validation (bad parameters?):", file=sys.stderr)
        print(report.describe(), file=sys.stderr)
        return EXIT_VALIDATION
    save(instance, args.out)
    print(f"wrote {args.out}: n={instance.n} m={instance.m} |K|={len(instance.demands)}")
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = _load_validated(args.instance)
    t0 = time.perf_counter()
    sub, info = bench_mod.run_algorithm(
        instance,
        args.algorithm,
        mst_lift=args.mst_lift,
        gamma_mode=args.gamma_mode,
        confidence=args.confidence,
        max_attempts=args.max_attempts,
        seed=args.seed,
        exact_cap=args.exact_cap,
    )
    elapsed = time.perf_counter() - t0
    verdict = verify_feasible(sub)  # exact re-verification, never skipped
    params = {
        "seed": args.seed,
        "mst_lift": args.mst_lift,
        "gamma_mode": args.gamma_mode,
        "max_attempts": args.max_attempts,
    }
    params.update({k: v for k, v in info.items() if k != "rounding_feasible"})
    payload = _solution_payload(args.algorithm, sub, verdict.feasible, params)
    _write_solution(args.out, payload)
    if args.metrics:
        row = bench_mod.MetricsRow(
            instance=args.instance,
            algorithm=args.algorithm,
            trial=0,
            feasible=verdict.feasible,
            weight=format_rational(sub.weight),
            size=sub.size,
            w_star=info.get("w_star", ""),
            high_weight_edges=info.get("high_weight_edges", ""),
            gamma=info.get("gamma", ""),
            attempts=info.get("attempts", ""),
            wall_time_s=f"{elapsed:.4f}",
        )
        if not instance.directed:
            mst_weight, _ = minimum_spanning_tree(instance)
            if mst_weight > 0:
                row.lightness = f"{float(sub.weight / mst_weight):.6f}"
        with open(args.metrics, "w", encoding="utf-8") as fh:
            fh.write(bench_mod.rows_to_csv([row]))
    if not verdict.feasible:
        print(verdict.describe(), file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_verify(args) -> int:
    instance = _load_validated(args.instance)
    with open(args.solution, encoding="utf-8") as fh:
        doc = json.load(fh)
    edge_ids = frozenset(doc.get("edge_indices", ()))
    if any(not isinstance(e, int) or not 0 <= e < instance.m for e in edge_ids):
        print(f"solution references edges outside [0,{instance.m})", file=sys.stderr)
        return EXIT_VALIDATION
    sub = Subgraph(instance, edge_ids)
    verdict = verify_feasible(sub)
    result = {
        "feasible": verdict.feasible,
        "weight": format_rational(sub.weight),
        "size": sub.size,
        "violations": [
            {
                "u": v.u,
                "v": v.v,
                "delta": str(v.delta),
                "achieved": None if v.achieved is None else str(v.achieved),
            }
            for v in verdict.violations
        ],
    }
    print(json.dumps(result, indent=2))
    return EXIT_OK if verdict.feasible else EXIT_INFEASIBLE


def cmd_bench(args) -> int:
    config = bench_mod.ExperimentConfig.from_json(args.config)
    if args.threads is not None:
        config.threads = args.threads
    rows = bench_mod.run_experiment(config)
    text = bench_mod.rows_to_csv(rows) if args.format == "csv" else bench_mod.rows_to_json(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({len(rows)} rows)")
    else:
        sys.stdout.write(text)
    summary = bench_mod.summarize(rows)
    print(json.dumps(summary, indent=2), file=sys.stderr)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.oracle == "demo":
        report = dodis_khanna_demo(args.length, args.alpha)
        text = report.to_json() if args.format == "json" else report.to_text()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return EXIT_OK

    if not args.instance:
        print(f"oracle {args.oracle!r} needs an instance file", file=sys.stderr)
        return EXIT_VALIDATION
    instance = _load_validated(args.instance)
    if args.oracle == "exact":
        result = exact_optimum(instance, max_edges=args.exact_cap)
        sub = Subgraph(instance, result.edge_set)
        payload = _solution_payload("exact", sub, True, {"nodes_explored": result.nodes_explored})
        _write_solution(args.out, payload)
        return EXIT_OK
    if args.oracle == "cuts":
        if args.solution:
            with open(args.solution, encoding="utf-8") as fh:
                edge_ids = frozenset(json.load(fh)["edge_indices"])
        else:
            edge_ids = frozenset(range(instance.m))
        report = check_cut_lemma(
            Subgraph(instance, edge_ids), cap=args.cut_cap, seed=args.seed
        )
        payload = {
            "pairs": [
                {
                    "u": p.u,
                    "v": p.v,
                    "delta": p.delta,
                    "cuts": p.cut_count,
                    "satisfied": p.satisfied_count,
                    "within_budget": p.within_budget,
                }
                for p in report.pairs
            ],
            "nonascending_sampled": report.nonascending_sampled,
            "biconditional_holds": report.ok,
        }
        _write_solution(args.out, payload)
        return EXIT_OK
    if args.oracle == "potential":
        trace: list = []
        augmented_greedy(instance, mst_lift=args.mst_lift, trace=trace)
        report = potential_monitor(instance, trace, args.beta)
        text = report.to_json() if args.format == "json" else report.to_text()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return EXIT_OK
    raise SpannerError(f"unknown oracle {args.oracle!r}")


def cmd_export_lp(args) -> int:
    instance = _load_validated(args.instance)
    int_inst = require_integer_lengths(instance)
    extension = build_extension(int_inst)
    model = build_mcf(extension)
    export_lp(model, args.out)
    print(
        f"wrote {args.out}: {model.num_vars} columns, "
        f"{model.a_ub.shape[0]} coupling + {model.a_eq.shape[0]} conservation rows"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spannerkit",
        description="Spanner approximation algorithms with exact verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an instance file")
    p_gen.add_argument("family", choices=list(WEIGHT_FAMILIES) + list(FIXED_INSTANCES))
    p_gen.add_argument("--n", type=int, default=8)
    p_gen.add_argument("--m", type=int, default=None)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--demands", choices=DEMAND_FAMILIES, default="multiplicative")
    p_gen.add_argument("--demand-pairs", choices=("edges", "all", "random"), default="edges")
    p_gen.add_argument("--num-demands", type=int, default=None)
    p_gen.add_argument("--alpha", type=int, default=3)
    p_gen.add_argument("--beta", type=int, default=2)
    p_gen.add_argument("--freeform-factor", type=int, default=2)
    p_gen.add_argument("--integer-lengths", action="store_true")
    p_gen.add_argument("--directed", action="store_true")
    p_gen.add_argument("--out", required=True)

    p_solve = sub.add_parser("solve", help="run one algorithm on an instance")
    p_solve.add_argument("instance")
    p_solve.add_argument(
        "--algorithm", choices=bench_mod.ALGORITHMS, default="augmented-greedy"
    )
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--mst-lift", action="store_true")
    p_solve.add_argument("--gamma-mode", choices=("global", "restricted", "custom"), default="global")
    p_solve.add_argument("--confidence", type=float, default=2.0,
                         help="failure-odds divisor for --gamma-mode custom")
    p_solve.add_argument("--max-attempts", type=int, default=10)
    p_solve.add_argument("--exact-cap", type=int, default=22)
    p_solve.add_argument("--out", default=None)
    p_solve.add_argument("--metrics", default=None)

    p_verify = sub.add_parser("verify", help="exactly verify a solution file")
    p_verify.add_argument("instance")
    p_verify.add_argument("--solution", required=True)

    p_bench = sub.add_parser("bench", help="run a batch experiment from a config file")
    p_bench.add_argument("config")
    p_bench.add_argument("--out", default=None)
    p_bench.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bench.add_argument("--threads", type=int, default=None)

    p_oracle = sub.add_parser("oracle", help="exact and brute-force reference tools")
    p_oracle.add_argument("oracle", choices=("exact", "cuts", "demo", "potential"))
    p_oracle.add_argument("instance", nargs="?")
    p_oracle.add_argument("--solution", default=None)
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--exact-cap", type=int, default=22)
    p_oracle.add_argument("--cut-cap", type=int, default=10**6)
    p_oracle.add_argument("--beta", type=int, default=2)
    p_oracle.add_argument("--mst-lift", action="store_true")
    p_oracle.add_argument("--length", type=int, default=3)
    p_oracle.add_argument("--alpha", type=int, default=2)
    p_oracle.add_argument("--format", choices=("text", "json"), default="text")
    p_oracle.add_argument("--out", default=None)

    p_export = sub.add_parser("export-lp", help="write the flow LP in LP text format")
    p_export.add_argument("instance")
    p_export.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "gen": cmd_gen,
        "solve": cmd_solve,
        "verify": cmd_verify,
        "bench": cmd_bench,
        "oracle": cmd_oracle,
        "export-lp": cmd_export_lp,
    }
    try:
        code = handlers[args.command](args)
    except InvalidInstance as exc:
        print(str(exc), file=sys.stderr)
        code = EXIT_VALIDATION
    except (LemmaViolation, MonotonicityViolation, AssertionError) as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        code = EXIT_ASSERTION
    except SpannerError as exc:
        print(str(exc), file=sys.stderr)
        code = EXIT_INFEASIBLE
    if code:
        sys.exit(code)
    return 0


if __name__ == "__main__":
    sys.exit(main())
