"""A small batch experiment: all solvers on seeded decoupled instances.

The same thing is available from the command line:

    spannerkit bench config.json --out results.csv
"""

import json

from spannerkit.bench import ExperimentConfig, rows_to_csv, run_experiment, summarize

config = ExperimentConfig(
    family="decoupled",
    n=7,
    m=12,
    instances=8,
    seed=2,
    demand_family="freeform",
    demand_pairs="random",
    num_demands=3,
    integer_lengths=True,
    algorithms=["greedy", "augmented-greedy", "randomized-rounding", "exact"],
    exact=True,  # also compute the true optimum for ratio columns
)

rows = run_experiment(config)
print(rows_to_csv(rows))
print("summary:")
print(json.dumps(summarize(rows), indent=2))
