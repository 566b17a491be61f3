"""Scaling experiments: circuit counts, iteration growth, shot-noise slopes."""

import sys

from vqa_poisson.cli import main

RUNS = [
    ["circuit-count-vs-n", "--n", "2:10", "--out", "runs/circuit_count"],
    ["iterations-vs-n", "--n", "2:5", "--tol", "0.1", "--out", "runs/iterations"],
    ["shot-error-vs-s", "--n", "2:4", "--out", "runs/shot_error"],
    ["shot-error-vs-s", "--n", "2:4", "--method", "baseline",
     "--out", "runs/shot_error_baseline"],
    ["grad-similarity-vs-s", "--n", "3", "--out", "runs/grad_similarity"],
]

if __name__ == "__main__":
    for args in RUNS:
        code = main(args)
        if code:
            sys.exit(code)
    sys.exit(0)
