"""Experiment harness: reproduces the study's figures as CSV-emitting subcommands.

Every experiment writes ``results.csv`` (one row per measurement),
``manifest.txt`` (full configuration, seeds, derived summaries) and
``fig_*.dat`` plot-data files (whitespace-separated x, y, yerr columns) into
the output directory.  All runs are deterministic given (config, seed).

Usage: ``vqa-poisson <experiment> [--bc ...] [--n ...] [--layers ...]
[--trials ...] [--shots ...] [--seed ...] [--epsilon ...] [--out DIR]``.
Exit codes: 0 success, 2 usage error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .classical import trace_distance
from .cost import baseline_cost, cost, measured_circuit_count
from .gradient import grad_cost, grad_numerator, term_gradient
from .operators import (DEFAULT_EPSILON, BoundaryCondition, Mesh2D, ObservableTerm,
                        assemble_fem_2d_dense, build_fem_2d, build_matrix, decompose,
                        reassemble_dense)
from .operators import FACTOR_I, FACTOR_X
from .optimize import (GradNorm, OptimizationConfig, TraceDistance, make_problem,
                       run_trials)
from .resources import count_baseline_circuits, resource_report
from .sampling import (UnstableEstimateError, derive_seed, sample_cost_estimates,
                       sampled_gradient)
from .states import AnsatzCircuit, prepare_ansatz_state, prepare_source_state

EXPERIMENTS = (
    "solve",
    "solution-field",
    "trace-distance-vs-n",
    "circuit-count-vs-n",
    "iterations-vs-n",
    "shot-error-vs-s",
    "grad-similarity-vs-s",
    "barren-plateau",
    "fem2d-verify",
)

# per-experiment default qubit count or range
N_DEFAULTS = {
    "solve": "5",
    "solution-field": "5",
    "trace-distance-vs-n": "2:5",
    "circuit-count-vs-n": "2:10",
    "iterations-vs-n": "2:5",
    "shot-error-vs-s": "2:4",
    "grad-similarity-vs-s": "3",
    "barren-plateau": "2:8",
    "fem2d-verify": "2",
}

STATEVECTOR_QUBIT_CAP = 10


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    experiment: str
    bc: BoundaryCondition = BoundaryCondition.DIRICHLET
    n_values: list[int] = field(default_factory=lambda: [5])
    layers: int = 5
    trials: int = 10
    shots: int = 4096
    shot_values: list[int] = field(default_factory=list)
    repeats: int = 10
    seed: int = 1234
    epsilon: float | None = None
    tol: float = 0.1
    grad_threshold: float = 1e-6
    max_iterations: int = 2000
    method: str = "proposed"
    mode: str = "statevector"
    out: Path = Path("out")

    @property
    def resolved_epsilon(self) -> float:
        if self.epsilon is not None:
            return self.epsilon
        return DEFAULT_EPSILON[self.bc]


def _parse_int_range(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError as err:
        raise UsageError(f"cannot parse integer or LO:HI range from {text!r}") from err
    if lo < 1 or hi < lo:
        raise UsageError(f"invalid range {text!r}")
    return list(range(lo, hi + 1))


def _powers_of_two(lo: int, hi: int) -> list[int]:
    if lo < 1 or hi < lo:
        raise UsageError(f"invalid shot range {lo}:{hi}")
    out = []
    s = 1
    while s < lo:
        s *= 2
    while s <= hi:
        out.append(s)
        s *= 2
    if not out:
        raise UsageError(f"no powers of two inside shot range {lo}:{hi}")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vqa-poisson",
        description="Poisson-equation VQA experiments (statevector simulation).",
    )
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--config", type=Path, default=None,
                        help="flat key=value config file; CLI flags override it")
    parser.add_argument("--bc", choices=[b.value for b in BoundaryCondition], default=None)
    parser.add_argument("--n", default=None,
                        help="qubit count or inclusive range LO:HI (experiment-specific default)")
    parser.add_argument("--layers", type=int, default=None)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--shots", default=None,
                        help="shot count, or LO:HI range of powers of two for *-vs-s experiments")
    parser.add_argument("--repeats", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--tol", type=float, default=None,
                        help="trace-distance tolerance for iterations-vs-n")
    parser.add_argument("--grad-threshold", type=float, default=None)
    parser.add_argument("--max-iterations", type=int, default=None)
    parser.add_argument("--method", choices=["proposed", "baseline"], default=None)
    parser.add_argument("--mode", choices=["statevector", "sampled"], default=None)
    parser.add_argument("--out", type=Path, default=None)
    return parser


def _read_config_file(path: Path) -> dict[str, str]:
    if not path.exists():
        raise UsageError(f"config file {path} does not exist")
    values = {}
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"config line {line!r} is not key=value")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    file_values = _read_config_file(args.config) if args.config else {}

    def pick(name: str, cast, default):
        cli = getattr(args, name, None)
        if cli is not None:
            return cli if cast is None else cast(cli)
        if name in file_values:
            return cast(file_values[name]) if cast else file_values[name]
        return default

    experiment = args.experiment
    config = ExperimentConfig(experiment=experiment)
    config.bc = BoundaryCondition(pick("bc", str, config.bc.value))
    config.layers = pick("layers", int, config.layers)
    config.trials = pick("trials", int, config.trials)
    config.repeats = pick("repeats", int, config.repeats)
    config.seed = pick("seed", int, config.seed)
    config.epsilon = pick("epsilon", float, None)
    config.tol = pick("tol", float, config.tol)
    config.grad_threshold = pick("grad_threshold", float, config.grad_threshold)
    config.max_iterations = pick("max_iterations", int, config.max_iterations)
    config.method = pick("method", str, config.method)
    config.mode = pick("mode", str, config.mode)
    config.out = Path(pick("out", str, str(config.out)))
    config.n_values = _parse_int_range(pick("n", str, N_DEFAULTS[experiment]))

    shots_text = pick("shots", str, None)
    if experiment in ("shot-error-vs-s", "grad-similarity-vs-s"):
        text = shots_text if shots_text is not None else "64:16384"
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
        else:
            lo = hi = int(text)
        config.shot_values = _powers_of_two(lo, hi)
    elif shots_text is not None:
        if ":" in str(shots_text):
            raise UsageError(f"experiment {experiment} takes a single --shots value")
        config.shots = int(shots_text)

    if any(n > STATEVECTOR_QUBIT_CAP for n in config.n_values):
        raise UsageError(f"n capped at {STATEVECTOR_QUBIT_CAP} qubits")
    if config.trials < 1 or config.repeats < 1:
        raise UsageError("trials and repeats must be >= 1")
    return config


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(cell) for cell in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def _write_fig(path: Path, columns: list[str], rows: list[list]) -> None:
    lines = ["# " + " ".join(columns)]
    lines += [" ".join(_fmt(cell) for cell in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def _write_manifest(path: Path, config: ExperimentConfig, summary: list[str]) -> None:
    lines = [
        f"package = vqa-poisson {__version__}",
        f"experiment = {config.experiment}",
        f"bc = {config.bc.value}",
        f"n_values = {','.join(str(n) for n in config.n_values)}",
        f"layers = {config.layers}",
        f"trials = {config.trials}",
        f"shots = {config.shots}",
        f"shot_values = {','.join(str(s) for s in config.shot_values)}",
        f"repeats = {config.repeats}",
        f"seed = {config.seed}",
        f"epsilon = {_fmt(config.resolved_epsilon)}",
        f"tol = {_fmt(config.tol)}",
        f"grad_threshold = {_fmt(config.grad_threshold)}",
        f"max_iterations = {config.max_iterations}",
        f"method = {config.method}",
        f"mode = {config.mode}",
    ]
    lines += summary
    path.write_text("\n".join(lines) + "\n")


def _loglog_slope(x: np.ndarray, y: np.ndarray) -> float:
    coeffs = np.polyfit(np.log10(x), np.log10(y), 1)
    return float(coeffs[0])


def _optimizer_config(config: ExperimentConfig, terminal) -> OptimizationConfig:
    return OptimizationConfig(
        max_iterations=config.max_iterations,
        terminal=terminal,
        n_trials=config.trials,
        seed=config.seed,
        mode=config.mode,
        shots=config.shots,
    )


def _run_solve(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    n = config.n_values[0]
    problem = make_problem(n, config.bc, config.layers, config.resolved_epsilon)
    result = run_trials(problem, _optimizer_config(config, GradNorm(config.grad_threshold)))
    rows = []
    for k, t in enumerate(result.traces):
        rows.append([k, t.status, t.iterations_used, t.circuit_executions,
                     t.final_report.energy, t.final_report.r_opt,
                     t.trace_distance, t.final_gradient_norm])
    _write_csv(out / "results.csv",
               ["trial", "status", "iterations", "circuit_executions", "energy",
                "r_opt", "trace_distance", "grad_norm"], rows)
    summary = [
        f"mean_iterations = {_fmt(result.mean_iterations)}",
        f"mean_trace_distance = {_fmt(result.mean_trace_distance)}",
        f"mean_energy = {_fmt(result.mean_energy)}",
        f"classical_norm = {_fmt(problem.classical().norm)}",
    ]
    return summary, 0


def _run_solution_field(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    n = config.n_values[0]
    problem = make_problem(n, config.bc, config.layers, config.resolved_epsilon)
    result = run_trials(problem, _optimizer_config(config, GradNorm(config.grad_threshold)))
    classical = problem.classical().u
    solutions = []
    for t in result.traces:
        psi = prepare_ansatz_state(problem.circuit, t.final_theta)
        solutions.append(t.final_report.r_opt * np.real(psi.amplitudes))
    header = ["node", "classical"] + [f"trial_{k}" for k in range(len(solutions))]
    rows = []
    for node in range(1 << n):
        rows.append([node, classical[node]] + [sol[node] for sol in solutions])
    _write_csv(out / "results.csv", header, rows)
    stacked = np.stack(solutions)
    fig_rows = [[node, classical[node], stacked[:, node].mean(), stacked[:, node].std()]
                for node in range(1 << n)]
    _write_fig(out / "fig_solution_field.dat", ["node", "classical", "mean", "std"], fig_rows)
    return [f"mean_trace_distance = {_fmt(result.mean_trace_distance)}"], 0


def _run_trace_distance_vs_n(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    rows, fig_rows = [], []
    for n in config.n_values:
        problem = make_problem(n, config.bc, config.layers, config.resolved_epsilon)
        result = run_trials(problem, _optimizer_config(config, GradNorm(config.grad_threshold)))
        rows.append([n, config.bc.value, config.trials,
                     result.mean_trace_distance, result.std_trace_distance,
                     result.mean_iterations, result.std_iterations,
                     result.mean_energy, result.std_energy])
        fig_rows.append([n, result.mean_trace_distance, result.std_trace_distance])
    _write_csv(out / "results.csv",
               ["n", "bc", "trials", "mean_trace_distance", "std_trace_distance",
                "mean_iterations", "std_iterations", "mean_energy", "std_energy"], rows)
    _write_fig(out / "fig_trace_distance.dat", ["n", "mean", "std"], fig_rows)
    return [], 0


def _run_circuit_count_vs_n(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    rows, res_rows = [], []
    for n in config.n_values:
        op = decompose(n, config.bc, config.resolved_epsilon)
        circuit = AnsatzCircuit(n, config.layers)
        f = prepare_source_state(n)
        rng = np.random.default_rng(derive_seed(config.seed, n))
        theta = rng.uniform(0.0, 4.0 * np.pi, circuit.parameter_count)
        # runtime count: number of shot estimates one cost evaluation produces;
        # raise shots until the sampled denominator stabilizes
        shots = 8
        while True:
            try:
                _, estimates = sample_cost_estimates(op, circuit, theta, f, shots,
                                                     derive_seed(config.seed, n, 1))
                break
            except UnstableEstimateError:
                shots *= 4
        executed = len(estimates)
        assert executed == measured_circuit_count(op)
        rows.append([n, config.bc.value, executed, count_baseline_circuits(n)])
        report = resource_report(n, config.layers, config.bc)
        res_rows.append([n, report.t_c, report.t_g, report.shift_rel_phase_toffolis,
                         report.shift_toffolis, report.shift_cnot, report.shift_x,
                         report.total_qubits_with_ancilla,
                         report.state_prep.ansatz_depth, report.state_prep.encoding_depth,
                         report.state_prep.shift_depth_bound])
    _write_csv(out / "results.csv",
               ["n", "bc", "circuits_proposed", "circuits_baseline"], rows)
    _write_csv(out / "resources.csv",
               ["n", "t_c", "t_g", "shift_rel_phase_toffolis", "shift_toffolis",
                "shift_cnot", "shift_x", "total_qubits_with_ancilla",
                "ansatz_depth", "encoding_depth", "shift_depth_bound"], res_rows)
    _write_fig(out / "fig_circuit_count.dat", ["n", "proposed", "baseline"],
               [[r[0], r[2], r[3]] for r in rows])
    return [], 0


def _run_iterations_vs_n(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    rows, fig_rows = [], []
    means = []
    for n in config.n_values:
        problem = make_problem(n, config.bc, config.layers, config.resolved_epsilon)
        result = run_trials(problem, _optimizer_config(config, TraceDistance(config.tol)))
        rows.append([n, config.bc.value, config.tol, config.trials,
                     result.mean_iterations, result.std_iterations,
                     result.mean_trace_distance, result.std_trace_distance])
        fig_rows.append([n, result.mean_iterations, result.std_iterations])
        means.append(result.mean_iterations)
    _write_csv(out / "results.csv",
               ["n", "bc", "tolerance", "trials", "mean_iterations", "std_iterations",
                "mean_trace_distance", "std_trace_distance"], rows)
    _write_fig(out / "fig_iterations.dat", ["n", "mean", "std"], fig_rows)
    summary = []
    if len(config.n_values) > 1 and all(m > 0 for m in means):
        slope = _loglog_slope(np.array(config.n_values, float), np.array(means))
        summary.append(f"loglog_slope_iterations = {_fmt(slope)}")
    return summary, 0


def _sample_baseline_cost(eig_a2, eig_xa, sup: np.ndarray, psi: np.ndarray,
                          shots: int, seed: int) -> float:
    """Dense-matrix-backed shot model of the prior method's cost.

    Eigenbasis sampling of A^2 on |psi> and of X (x) A on the superposition
    state; unbiased for each expectation, plugged into <A^2> - <psi|A|f>^2.
    """
    w_a, v_a = eig_a2
    w_x, v_x = eig_xa
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    p_a = np.abs(v_a.T @ psi) ** 2
    p_a = np.clip(p_a, 0.0, None)
    p_a /= p_a.sum()
    est_a2 = float((w_a ** 2)[rng.choice(p_a.size, size=shots, p=p_a)].mean())
    p_x = np.abs(v_x.T @ sup) ** 2
    p_x = np.clip(p_x, 0.0, None)
    p_x /= p_x.sum()
    est_af = float(w_x[rng.choice(p_x.size, size=shots, p=p_x)].mean())
    return est_a2 - est_af * est_af


def _run_shot_error_vs_s(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    rows, summary = [], []
    for n in config.n_values:
        op = decompose(n, config.bc, config.resolved_epsilon)
        matrix = build_matrix(n, config.bc, config.resolved_epsilon)
        circuit = AnsatzCircuit(n, config.layers)
        f = prepare_source_state(n)
        rng = np.random.default_rng(derive_seed(config.seed, n))
        theta = rng.uniform(0.0, 4.0 * np.pi, circuit.parameter_count)
        psi = prepare_ansatz_state(circuit, theta)
        if config.method == "baseline":
            exact = baseline_cost(matrix, psi, f).cost
            eig_a2 = np.linalg.eigh(matrix)
            x_matrix = np.array([[0.0, 1.0], [1.0, 0.0]])
            eig_xa = np.linalg.eigh(np.kron(x_matrix, matrix))
            sup = np.concatenate([f.amplitudes, psi.amplitudes]) / np.sqrt(2.0)
        else:
            exact = cost(op, circuit, theta, f).energy
        fig_rows = []
        for shots in config.shot_values:
            sq_errors = []
            for repeat in range(config.repeats):
                seed = derive_seed(config.seed, n, shots, repeat)
                if config.method == "baseline":
                    estimate = _sample_baseline_cost(
                        eig_a2, eig_xa, sup, np.real(psi.amplitudes), shots, seed)
                else:
                    report, _ = sample_cost_estimates(op, circuit, theta, f, shots, seed)
                    estimate = report.energy
                sq = (estimate - exact) ** 2
                sq_errors.append(sq)
                rows.append([n, shots, repeat, estimate, exact, sq])
            fig_rows.append([shots, np.mean(sq_errors), np.std(sq_errors)])
        _write_fig(out / f"fig_shot_error_n{n}.dat",
                   ["shots", "mean_sq_error", "std_sq_error"], fig_rows)
        slope = _loglog_slope(np.array([r[0] for r in fig_rows], float),
                              np.array([r[1] for r in fig_rows]))
        summary.append(f"slope_n{n} = {_fmt(slope)}")
    _write_csv(out / "results.csv",
               ["n", "shots", "repeat", "estimate", "exact", "squared_error"], rows)
    return summary, 0


def _run_grad_similarity_vs_s(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    rows, summary = [], []
    for n in config.n_values:
        op = decompose(n, config.bc, config.resolved_epsilon)
        circuit = AnsatzCircuit(n, config.layers)
        f = prepare_source_state(n)
        rng = np.random.default_rng(derive_seed(config.seed, n))
        theta = rng.uniform(0.0, 4.0 * np.pi, circuit.parameter_count)
        exact = grad_cost(op, circuit, theta, f).grad
        exact_norm = np.linalg.norm(exact)
        fig_rows = []
        for shots in config.shot_values:
            dissims = []
            for repeat in range(config.repeats):
                seed = derive_seed(config.seed, n, shots, repeat)
                sampled = sampled_gradient(op, circuit, theta, f, shots, seed)
                denom = exact_norm * np.linalg.norm(sampled)
                cosine = float(exact @ sampled / denom) if denom > 0 else 0.0
                dissims.append(1.0 - cosine)
                rows.append([n, shots, repeat, 1.0 - cosine])
            fig_rows.append([shots, np.mean(dissims), np.std(dissims)])
        _write_fig(out / f"fig_grad_similarity_n{n}.dat",
                   ["shots", "mean_dissimilarity", "std_dissimilarity"], fig_rows)
        slope = _loglog_slope(np.array([r[0] for r in fig_rows], float),
                              np.array([max(r[1], 1e-300) for r in fig_rows]))
        summary.append(f"slope_n{n} = {_fmt(slope)}")
    _write_csv(out / "results.csv", ["n", "shots", "repeat", "one_minus_cosine"], rows)
    return summary, 0


def barren_plateau_norms(n: int, layers: int, bc: BoundaryCondition, epsilon: float,
                         seed: int, trials: int) -> list[list[float]]:
    """Per-seed gradient norms of the cost and its three observable groups."""
    op = decompose(n, bc, epsilon)
    circuit = AnsatzCircuit(n, layers)
    f = prepare_source_state(n)
    even = ObservableTerm(-1.0, tuple(FACTOR_X if q == 0 else FACTOR_I for q in range(n)), (0,))
    odd = ObservableTerm(-1.0, even.factors, (1,))
    rows = []
    for k in range(trials):
        rng = np.random.default_rng(derive_seed(seed, n, k))
        theta = rng.uniform(0.0, 4.0 * np.pi, circuit.parameter_count)
        rows.append([
            float(grad_cost(op, circuit, theta, f).norm),
            float(np.linalg.norm(term_gradient(even, circuit, theta))),
            float(np.linalg.norm(term_gradient(odd, circuit, theta))),
            float(np.linalg.norm(grad_numerator(circuit, theta, f))),
        ])
    return rows


def _run_barren_plateau(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    rows = []
    series = {name: [] for name in ("cost", "even", "odd", "numerator")}
    for n in config.n_values:
        norms = barren_plateau_norms(n, config.layers, config.bc,
                                     config.resolved_epsilon, config.seed, config.trials)
        for k, (g_cost, g_even, g_odd, g_num) in enumerate(norms):
            rows.append([n, k, g_cost, g_even, g_odd, g_num])
        arr = np.array(norms)
        for col, name in enumerate(("cost", "even", "odd", "numerator")):
            series[name].append([n, arr[:, col].mean(), arr[:, col].std()])
    _write_csv(out / "results.csv",
               ["n", "seed_index", "grad_norm_cost", "grad_norm_even",
                "grad_norm_odd", "grad_norm_numerator"], rows)
    for name, fig_rows in series.items():
        _write_fig(out / f"fig_barren_plateau_{name}.dat", ["n", "mean", "std"], fig_rows)
    return [], 0


def _run_fem2d_verify(config: ExperimentConfig, out: Path) -> tuple[list[str], int]:
    cap = config.n_values[-1]
    rows = []
    all_exact = True
    for nx in range(1, cap + 1):
        for ny in range(1, cap + 1):
            mesh = Mesh2D(nx, ny)
            op = build_fem_2d(mesh)
            dense = reassemble_dense(op)
            reference = assemble_fem_2d_dense(mesh)
            max_err = float(np.abs(dense - reference).max())
            exact = bool(np.array_equal(dense, reference))
            all_exact = all_exact and exact
            rows.append([nx, ny, len(op.terms), op.constant_offset, max_err, exact])
    _write_csv(out / "results.csv",
               ["n_x", "n_y", "terms", "constant_offset", "max_abs_error", "exact_match"],
               rows)
    summary = [f"all_exact = {1 if all_exact else 0}"]
    return summary, 0 if all_exact else 1


RUNNERS = {
    "solve": _run_solve,
    "solution-field": _run_solution_field,
    "trace-distance-vs-n": _run_trace_distance_vs_n,
    "circuit-count-vs-n": _run_circuit_count_vs_n,
    "iterations-vs-n": _run_iterations_vs_n,
    "shot-error-vs-s": _run_shot_error_vs_s,
    "grad-similarity-vs-s": _run_grad_similarity_vs_s,
    "barren-plateau": _run_barren_plateau,
    "fem2d-verify": _run_fem2d_verify,
}


def run(config: ExperimentConfig) -> int:
    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    summary, code = RUNNERS[config.experiment](config, out)
    _write_manifest(out / "manifest.txt", config, summary)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except Exception as err:  # runtime failure -> diagnostic + exit 1
        print(f"runtime failure: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
