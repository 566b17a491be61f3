"""BFGS minimization of the cost over theta with the experiment protocols.

BFGS with backtracking Armijo line search, implemented here (no external
solver), inverse-Hessian seeded with the identity and rescaled after the
first accepted step.  Trials draw initial parameters uniformly from
[0, 4*pi] and are embarrassingly parallel in their seeds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .classical import ClassicalSolution, solve, trace_distance
from .cost import (CostReport, SingularOperatorError, cost_from_state,
                   measured_circuit_count)
from .gradient import grad_cost
from .operators import (DEFAULT_EPSILON, BoundaryCondition, PoissonOperator,
                        build_matrix, decompose)
from .sampling import UnstableEstimateError, derive_seed, sample_cost, sampled_gradient
from .states import AnsatzCircuit, Statevector, prepare_ansatz_state, prepare_source_state

INIT_RANGE = (0.0, 4.0 * np.pi)

_EVALUATION_ERRORS = (SingularOperatorError, UnstableEstimateError)


@dataclass(frozen=True)
class GradNorm:
    """Stop when the gradient norm drops below the threshold."""

    threshold: float = 1e-6


@dataclass(frozen=True)
class TraceDistance:
    """Stop when the trace distance to the classical solution drops below tolerance.

    Oracle-assisted comparison protocol: needs the cached classical solve.
    """

    tolerance: float = 0.01


@dataclass
class OptimizationConfig:
    max_iterations: int = 1000
    terminal: GradNorm | TraceDistance = field(default_factory=GradNorm)
    n_trials: int = 10
    init_low: float = INIT_RANGE[0]
    init_high: float = INIT_RANGE[1]
    seed: int = 0
    mode: str = "statevector"  # or "sampled"
    shots: int = 1024
    record_theta: bool = False


@dataclass
class PoissonProblem:
    """Operator, ansatz and source bundle; caches the classical reference."""

    operator: PoissonOperator
    circuit: AnsatzCircuit
    source: Statevector
    dense_matrix: np.ndarray
    _classical: ClassicalSolution | None = field(default=None, repr=False)

    def classical(self) -> ClassicalSolution:
        if self._classical is None:
            self._classical = solve(self.dense_matrix, np.real(self.source.amplitudes))
        return self._classical


def make_problem(n: int, bc: BoundaryCondition, n_layers: int = 5,
                 epsilon: float | None = None, source=None) -> PoissonProblem:
    """Assemble the standard experiment problem for one (n, bc) pair."""
    if epsilon is None:
        epsilon = DEFAULT_EPSILON[bc]
    return PoissonProblem(
        operator=decompose(n, bc, epsilon),
        circuit=AnsatzCircuit(n, n_layers),
        source=prepare_source_state(n, source),
        dense_matrix=build_matrix(n, bc, epsilon),
    )


@dataclass
class BfgsResult:
    x: np.ndarray
    iterations: int
    status: str
    values: list[float]
    gradient_norms: list[float]
    xs: list[np.ndarray]
    final_gradient_norm: float


def bfgs(fun: Callable[[np.ndarray], float], jac: Callable[[np.ndarray], np.ndarray],
         x0: np.ndarray, max_iterations: int,
         stop_when: Callable[[np.ndarray, float, np.ndarray], bool],
         record_x: bool = False) -> BfgsResult:
    """BFGS with backtracking Armijo line search.

    ``stop_when(x, value, gradient)`` is consulted once per iterate;
    evaluation errors from the error classes in this module abort cleanly.
    Statuses: converged, max_iterations, line_search_failed, aborted:<why>.
    """
    x = np.asarray(x0, dtype=float)
    dim = x.size
    values: list[float] = []
    gnorms: list[float] = []
    xs: list[np.ndarray] = []

    try:
        value = fun(x)
        grad = jac(x)
    except _EVALUATION_ERRORS as err:
        return BfgsResult(x, 0, f"aborted:{err}", values, gnorms, xs, np.nan)

    hessian_inv = np.eye(dim)
    status = "max_iterations"
    k = 0
    while True:
        gnorm = float(np.linalg.norm(grad))
        values.append(value)
        gnorms.append(gnorm)
        if record_x:
            xs.append(x.copy())
        if not np.isfinite(value) or not np.isfinite(gnorm):
            status = "aborted:non-finite cost or gradient"
            break
        if stop_when(x, value, grad):
            status = "converged"
            break
        if k >= max_iterations:
            status = "max_iterations"
            break

        direction = -hessian_inv @ grad
        slope = float(grad @ direction)
        if slope >= 0.0:  # not a descent direction; reset curvature estimate
            hessian_inv = np.eye(dim)
            direction = -grad
            slope = float(grad @ direction)

        alpha = 1.0
        accepted = None
        for _ in range(40):
            try:
                candidate = fun(x + alpha * direction)
            except _EVALUATION_ERRORS:
                alpha *= 0.5
                continue
            if candidate <= value + 1e-4 * alpha * slope:
                accepted = candidate
                break
            alpha *= 0.5
        if accepted is None:
            status = "line_search_failed"
            break

        step = alpha * direction
        new_x = x + step
        try:
            new_grad = jac(new_x)
        except _EVALUATION_ERRORS as err:
            status = f"aborted:{err}"
            x, value = new_x, accepted
            grad = np.full(dim, np.nan)
            break
        y = new_grad - grad
        sy = float(step @ y)
        if k == 0 and sy > 0.0:
            hessian_inv *= sy / float(y @ y)
        if sy > 1e-12 * np.linalg.norm(step) * np.linalg.norm(y):
            rho = 1.0 / sy
            outer_sy = np.outer(step, y)
            hessian_inv = (
                (np.eye(dim) - rho * outer_sy) @ hessian_inv
                @ (np.eye(dim) - rho * outer_sy.T)
                + rho * np.outer(step, step)
            )
        x, value, grad = new_x, accepted, new_grad
        k += 1

    final_gnorm = float(np.linalg.norm(grad)) if np.all(np.isfinite(grad)) else np.nan
    return BfgsResult(x, k, status, values, gnorms, xs, final_gnorm)


@dataclass
class OptimizationTrace:
    costs: list[float]
    gradient_norms: list[float]
    thetas: list[np.ndarray]
    final_theta: np.ndarray
    final_report: CostReport
    final_gradient_norm: float
    iterations_used: int
    circuit_executions: int
    status: str
    trace_distance: float | None = None


@dataclass
class TrialsResult:
    traces: list[OptimizationTrace]
    mean_iterations: float
    std_iterations: float
    mean_trace_distance: float
    std_trace_distance: float
    mean_energy: float
    std_energy: float
    n_aborted: int


def minimize(problem: PoissonProblem, config: OptimizationConfig,
             theta0: np.ndarray | None = None,
             trial_seed: int | None = None) -> OptimizationTrace:
    """Run one BFGS trial on the potential-energy cost."""
    op, circuit, f = problem.operator, problem.circuit, problem.source
    count = circuit.parameter_count
    if trial_seed is None:
        trial_seed = config.seed
    if theta0 is None:
        rng = np.random.default_rng(np.random.SeedSequence(trial_seed))
        theta0 = rng.uniform(config.init_low, config.init_high, count)

    t_c = measured_circuit_count(op)
    counters = {"circuits": 0, "evals": 0}
    reports: dict[bytes, CostReport] = {}

    def eval_cost(theta: np.ndarray) -> float:
        counters["circuits"] += t_c
        if config.mode == "sampled":
            counters["evals"] += 1
            report = sample_cost(op, circuit, theta, f, config.shots,
                                 derive_seed(trial_seed, 1, counters["evals"]))
        else:
            report = cost_from_state(op, prepare_ansatz_state(circuit, theta), f)
        reports[theta.tobytes()] = report
        return report.energy

    def eval_grad(theta: np.ndarray) -> np.ndarray:
        if config.mode == "sampled":
            counters["evals"] += 1
            counters["circuits"] += count * (1 + 2 * len(op.terms)) + t_c
            return sampled_gradient(op, circuit, theta, f, config.shots,
                                    derive_seed(trial_seed, 2, counters["evals"]))
        counters["circuits"] += count * t_c
        return grad_cost(op, circuit, theta, f).grad

    reference = problem.classical() if isinstance(config.terminal, TraceDistance) else None

    def stop_when(theta: np.ndarray, value: float, grad: np.ndarray) -> bool:
        if isinstance(config.terminal, GradNorm):
            return bool(np.linalg.norm(grad) < config.terminal.threshold)
        eps_tr = trace_distance(prepare_ansatz_state(circuit, theta),
                                reference.u_normalized)
        return eps_tr < config.terminal.tolerance

    result = bfgs(eval_cost, eval_grad, theta0, config.max_iterations, stop_when,
                  record_x=config.record_theta)

    final_report = reports.get(result.x.tobytes())
    if final_report is None:
        if result.status.startswith("aborted"):
            final_report = CostReport(np.nan, np.nan, np.nan, np.nan)
        else:
            final_report = cost_from_state(op, prepare_ansatz_state(circuit, result.x), f)
    eps_tr = None
    if reference is not None:
        eps_tr = trace_distance(prepare_ansatz_state(circuit, result.x),
                                reference.u_normalized)
    return OptimizationTrace(
        costs=result.values,
        gradient_norms=result.gradient_norms,
        thetas=result.xs,
        final_theta=result.x,
        final_report=final_report,
        final_gradient_norm=result.final_gradient_norm,
        iterations_used=result.iterations,
        circuit_executions=counters["circuits"],
        status=result.status,
        trace_distance=eps_tr,
    )


def run_trials(problem: PoissonProblem, config: OptimizationConfig) -> TrialsResult:
    """n_trials independent seeds; summary statistics over completed trials."""
    traces = []
    for trial in range(config.n_trials):
        trace = minimize(problem, config, trial_seed=derive_seed(config.seed, trial))
        if trace.trace_distance is None and not trace.status.startswith("aborted"):
            reference = problem.classical()
            psi = prepare_ansatz_state(problem.circuit, trace.final_theta)
            trace.trace_distance = trace_distance(psi, reference.u_normalized)
        traces.append(trace)
    completed = [t for t in traces if not t.status.startswith("aborted")]
    iterations = np.array([t.iterations_used for t in completed], dtype=float)
    distances = np.array([t.trace_distance for t in completed], dtype=float)
    energies = np.array([t.final_report.energy for t in completed], dtype=float)

    def stats(values: np.ndarray) -> tuple[float, float]:
        if values.size == 0:
            return np.nan, np.nan
        return float(values.mean()), float(values.std())

    mean_it, std_it = stats(iterations)
    mean_tr, std_tr = stats(distances)
    mean_en, std_en = stats(energies)
    return TrialsResult(
        traces=traces,
        mean_iterations=mean_it, std_iterations=std_it,
        mean_trace_distance=mean_tr, std_trace_distance=std_tr,
        mean_energy=mean_en, std_energy=std_en,
        n_aborted=len(traces) - len(completed),
    )
