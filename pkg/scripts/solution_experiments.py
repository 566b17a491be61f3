"""Solution-quality experiments: per-node fields and trace distance vs n."""

import sys

from vqa_poisson.cli import main

if __name__ == "__main__":
    seed = sys.argv[1] if len(sys.argv) > 1 else "1234"
    for bc in ("periodic", "dirichlet", "neumann"):
        code = main(["solution-field", "--n", "5", "--bc", bc, "--seed", seed,
                     "--out", f"runs/field_{bc}"])
        if code:
            sys.exit(code)
    sys.exit(main(["trace-distance-vs-n", "--n", "2:5", "--seed", seed,
                   "--out", "runs/trace_distance"]))
