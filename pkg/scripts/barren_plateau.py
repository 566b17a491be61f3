"""Gradient-norm diagnostics across qubit counts (local vs global terms)."""

import sys

from vqa_poisson.cli import main

if __name__ == "__main__":
    sys.exit(main(["barren-plateau", "--n", "2:8", "--trials", "10",
                   "--out", "runs/barren_plateau"]))
