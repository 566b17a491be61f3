"""Shot-based (Monte Carlo) estimation of the measured terms and the MSE model.

Measurement protocol per term: apply the register shifts, rotate every X
factor into the computational basis with a Hadamard, sample bitstrings from
the amplitudes, and score each shot as coefficient * (+-1 per X bit) * (0/1
per projector bit).  Every term draws from an independently derived stream so
term estimates are uncorrelated, and all estimates are deterministic in the
seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cost import CostReport
from .operators import FACTOR_I, FACTOR_P0, FACTOR_X, ObservableTerm, PoissonOperator, shift_amplitudes
from .states import (AnsatzCircuit, Statevector, apply_h, prepare_ansatz_state,
                     prepare_superposition_state)


class UnstableEstimateError(RuntimeError):
    """Sampled denominator came out non-positive; raise the shot count."""


@dataclass(frozen=True)
class ShotEstimate:
    mean: float
    sample_variance: float
    shots: int
    seed: int


@dataclass(frozen=True)
class MsePrediction:
    predicted_mse: float


def derive_seed(seed: int, *key: int) -> int:
    """Stable 64-bit child seed for (seed, key...); keys partition streams."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, np.uint64)[0])


def ancilla_x_term(n_register: int) -> ObservableTerm:
    """X on the ancilla of an (n+1)-qubit superposition register."""
    factors = tuple([FACTOR_I] * n_register + [FACTOR_X])
    return ObservableTerm(1.0, factors, (0,))


def _measurement_distribution(term: ObservableTerm, state: Statevector,
                              axes: tuple[int, ...] | None) -> tuple[np.ndarray, np.ndarray]:
    """(outcome probabilities, per-outcome shot values) for one term."""
    if term.n_qubits != state.n_qubits:
        raise ValueError(
            f"term acts on {term.n_qubits} qubits, state has {state.n_qubits}"
        )
    if axes is None:
        axes = (term.n_qubits,)
    rotated = Statevector(shift_amplitudes(state.amplitudes, axes, term.axis_shifts))
    for q, f in enumerate(term.factors):
        if f == FACTOR_X:
            rotated = apply_h(rotated, q)
    probs = rotated.probabilities()
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    idx = np.arange(probs.size)
    values = np.full(probs.size, term.coefficient)
    for q, f in enumerate(term.factors):
        if f == FACTOR_X:
            values = values * (1.0 - 2.0 * ((idx >> q) & 1))
        elif f == FACTOR_P0:
            values = values * (((idx >> q) & 1) == 0)
    return probs, values


def term_shot_moments(term: ObservableTerm, state: Statevector,
                      axes: tuple[int, ...] | None = None) -> tuple[float, float]:
    """Exact single-shot mean and variance of the term's measurement."""
    probs, values = _measurement_distribution(term, state, axes)
    mean = float(probs @ values)
    second = float(probs @ (values * values))
    return mean, second - mean * mean


def sample_term(term: ObservableTerm, state: Statevector, shots: int, seed: int,
                axes: tuple[int, ...] | None = None) -> ShotEstimate:
    """Monte Carlo estimate of one term expectation from `shots` samples."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    probs, values = _measurement_distribution(term, state, axes)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    outcomes = rng.choice(probs.size, size=shots, p=probs)
    samples = values[outcomes]
    variance = float(samples.var(ddof=1)) if shots > 1 else 0.0
    return ShotEstimate(mean=float(samples.mean()), sample_variance=variance,
                        shots=shots, seed=seed)


def _shots_per_term(shots_per_term: int | Sequence[int], count: int) -> list[int]:
    if isinstance(shots_per_term, (int, np.integer)):
        return [int(shots_per_term)] * count
    shots = [int(s) for s in shots_per_term]
    if len(shots) != count:
        raise ValueError(f"expected {count} shot counts, got {len(shots)}")
    return shots


def sample_cost_estimates(op: PoissonOperator, circuit: AnsatzCircuit,
                          theta: np.ndarray, f: Statevector,
                          shots_per_term: int | Sequence[int],
                          seed: int) -> tuple[CostReport, tuple[ShotEstimate, ...]]:
    """Plug-in cost estimate plus the per-term shot estimates.

    Estimate index 0 is the numerator (ancilla X on the superposition state);
    the rest follow the operator's term order.  The returned tuple length is
    the number of circuits executed for one cost evaluation.
    """
    psi = prepare_ansatz_state(circuit, theta)
    sup = prepare_superposition_state(f, psi)
    shots = _shots_per_term(shots_per_term, 1 + len(op.terms))
    estimates = [
        sample_term(ancilla_x_term(psi.n_qubits), sup, shots[0], derive_seed(seed, 0))
    ]
    for k, term in enumerate(op.terms):
        estimates.append(
            sample_term(term, psi, shots[k + 1], derive_seed(seed, k + 1), axes=op.axes)
        )
    num = estimates[0].mean
    den = op.constant_offset + sum(e.mean for e in estimates[1:])
    if den <= 0.0:
        raise UnstableEstimateError(
            f"sampled denominator {den} is not positive at {shots} shots"
        )
    report = CostReport(numerator=num, denominator=den, r_opt=num / den,
                        energy=-0.5 * num * num / den)
    return report, tuple(estimates)


def sample_cost(op: PoissonOperator, circuit: AnsatzCircuit, theta: np.ndarray,
                f: Statevector, shots_per_term: int | Sequence[int],
                seed: int) -> CostReport:
    """Shot-based cost estimate (see :func:`sample_cost_estimates`)."""
    report, _ = sample_cost_estimates(op, circuit, theta, f, shots_per_term, seed)
    return report


def predict_mse(r_opt: float, variances: Sequence[float],
                shots: int | Sequence[int]) -> MsePrediction:
    """Closed-form MSE of the plug-in cost estimator.

    ``variances[0]`` is the single-shot variance of the numerator sample, the
    rest belong to the denominator terms:
    mse = r^2 (v_1/S_1 + (1/4) r^2 sum_{i>=2} v_i/S_i).
    """
    shot_list = _shots_per_term(shots, len(variances))
    if any(s < 1 for s in shot_list):
        raise ValueError("all shot counts must be >= 1")
    r2 = r_opt * r_opt
    den_part = sum(v / s for v, s in zip(variances[1:], shot_list[1:]))
    return MsePrediction(predicted_mse=r2 * (variances[0] / shot_list[0] + 0.25 * r2 * den_part))


def sampled_gradient(op: PoissonOperator, circuit: AnsatzCircuit, theta: np.ndarray,
                     f: Statevector, shots_per_term: int | Sequence[int],
                     seed: int) -> np.ndarray:
    """Shot-based cost gradient via the parameter-shift route.

    Per parameter: the numerator derivative is half the sampled numerator at
    theta_i + pi, the denominator derivative is the +-pi/2 difference of the
    sampled term sums.  Streams are derived per (parameter, branch, term).
    """
    theta = np.asarray(theta, dtype=float)
    count = circuit.parameter_count
    base, base_estimates = sample_cost_estimates(op, circuit, theta, f, shots_per_term,
                                                 derive_seed(seed, 0))
    shots = _shots_per_term(shots_per_term, 1 + len(op.terms))
    num, den = base.numerator, base.denominator
    g_num = np.empty(count)
    d_den = np.empty(count)
    for i in range(count):
        pi_shift = theta.copy()
        pi_shift[i] += np.pi
        psi_pi = prepare_ansatz_state(circuit, pi_shift)
        sup = prepare_superposition_state(f, psi_pi)
        est = sample_term(ancilla_x_term(psi_pi.n_qubits), sup, shots[0],
                          derive_seed(seed, 1, i))
        g_num[i] = est.mean
        branch_sums = []
        for branch, delta in ((2, np.pi / 2.0), (3, -np.pi / 2.0)):
            shifted = theta.copy()
            shifted[i] += delta
            psi_s = prepare_ansatz_state(circuit, shifted)
            total = 0.0
            for k, term in enumerate(op.terms):
                est = sample_term(term, psi_s, shots[k + 1],
                                  derive_seed(seed, branch, i, k), axes=op.axes)
                total += est.mean
            branch_sums.append(total)
        d_den[i] = 0.5 * (branch_sums[0] - branch_sums[1])
    return -0.5 * num * g_num / den + 0.5 * num * num * d_den / (den * den)
