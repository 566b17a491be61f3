import numpy as np
import pytest

from vqa_poisson import (AnsatzCircuit, BoundaryCondition, GradNorm, OptimizationConfig,
                         PoissonProblem, TraceDistance, make_problem, minimize,
                         prepare_source_state, run_trials)
from vqa_poisson.optimize import bfgs
from vqa_poisson.operators import PoissonOperator

DIRICHLET = BoundaryCondition.DIRICHLET


@pytest.mark.parametrize("dim", [2, 5, 10])
def test_bfgs_solves_spd_quadratics(dim, rng):
    m = rng.normal(size=(dim, dim))
    q = m @ m.T + dim * np.eye(dim)
    b = rng.normal(size=dim)
    result = bfgs(
        lambda x: float(x @ q @ x - b @ x),
        lambda x: 2.0 * q @ x - b,
        rng.normal(size=dim),
        max_iterations=3 * dim,
        stop_when=lambda x, v, g: np.linalg.norm(g) < 1e-8,
    )
    assert result.status == "converged"
    assert result.iterations <= 3 * dim
    np.testing.assert_allclose(result.x, np.linalg.solve(2.0 * q, b), atol=1e-6)


def test_minimize_reaches_classical_optimum():
    problem = make_problem(2, DIRICHLET, n_layers=5)
    config = OptimizationConfig(max_iterations=500, terminal=GradNorm(1e-6))
    trace = minimize(problem, config, trial_seed=3)
    assert trace.status == "converged"
    solution = problem.classical()
    best = -0.5 * float(np.real(problem.source.amplitudes) @ solution.u)
    assert trace.final_report.energy == pytest.approx(best, abs=1e-6)


def test_minimize_accepts_stationary_start():
    # psi(pi/2) is orthogonal to the step source on one qubit: zero gradient
    problem = make_problem(1, DIRICHLET, n_layers=0)
    config = OptimizationConfig(max_iterations=50, terminal=GradNorm(1e-8))
    trace = minimize(problem, config, theta0=np.array([np.pi / 2]))
    assert trace.status == "converged"
    assert trace.iterations_used == 0


def test_minimize_is_deterministic():
    problem = make_problem(3, DIRICHLET)
    config = OptimizationConfig(max_iterations=300)
    a = minimize(problem, config, trial_seed=11)
    b = minimize(problem, config, trial_seed=11)
    assert a.costs == b.costs
    assert a.final_theta.tobytes() == b.final_theta.tobytes()
    assert a.circuit_executions == b.circuit_executions


def test_energy_lower_bound_respected_throughout():
    problem = make_problem(3, DIRICHLET)
    solution = problem.classical()
    bound = -0.5 * float(np.real(problem.source.amplitudes) @ solution.u)
    config = OptimizationConfig(max_iterations=200)
    for seed in (1, 2, 3):
        trace = minimize(problem, config, trial_seed=seed)
        assert all(c >= bound - 1e-9 for c in trace.costs)


def test_aborted_trial_reports_diagnostic():
    op = PoissonOperator((1,), DIRICHLET, (), -1.0)  # always-singular denominator
    problem = PoissonProblem(op, AnsatzCircuit(1, 0), prepare_source_state(1),
                             np.array([[1.0, 0.0], [0.0, 1.0]]))
    trace = minimize(problem, OptimizationConfig(max_iterations=10), trial_seed=0)
    assert trace.status.startswith("aborted")
    assert trace.iterations_used == 0


def test_trace_distance_terminal_converges_quickly():
    problem = make_problem(3, DIRICHLET)
    config = OptimizationConfig(max_iterations=500, terminal=TraceDistance(0.1))
    trace = minimize(problem, config, trial_seed=4)
    assert trace.status == "converged"
    assert trace.trace_distance < 0.1


def test_run_trials_bookkeeping():
    problem = make_problem(3, DIRICHLET)
    config = OptimizationConfig(max_iterations=400, n_trials=10, seed=2024)
    result = run_trials(problem, config)
    assert len(result.traces) == 10
    assert np.isfinite(result.std_iterations)
    assert np.isfinite(result.std_energy)
    assert result.n_aborted == 0
    assert all(t.trace_distance is not None for t in result.traces)


def test_mean_iterations_grow_with_qubit_count():
    # loose trace-distance terminal keeps this cheap; slope sign is the claim
    means = []
    ns = [2, 3, 4, 5]
    for n in ns:
        problem = make_problem(n, DIRICHLET)
        config = OptimizationConfig(max_iterations=600, terminal=TraceDistance(0.1),
                                    n_trials=6, seed=77)
        result = run_trials(problem, config)
        means.append(result.mean_iterations)
    slope = np.polyfit(np.log10(ns), np.log10(means), 1)[0]
    assert slope > 0
    assert means[-1] > means[0]


def test_sampled_mode_runs_and_counts_circuits():
    problem = make_problem(2, DIRICHLET, n_layers=1)
    config = OptimizationConfig(max_iterations=3, n_trials=1, seed=5,
                                mode="sampled", shots=512)
    trace = minimize(problem, config, trial_seed=9)
    # 4 circuits per cost evaluation were actually sampled
    assert trace.circuit_executions > 0
    assert trace.iterations_used <= 3
