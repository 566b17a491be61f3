"""Analytic gradient of the cost via pi-shifted states, plus checkers.

For R_Y parameters, d|psi>/d theta_i = (1/2) U(..., theta_i + pi, ...)|0...0>,
so every gradient component is an expectation involving the pi-shifted state.
All parameter_count shifted states are simulated as one batch: R_Y rotations
about the same axis compose, so row i just receives an extra R_Y(pi) right
after its own gate.  A +-pi/2 parameter-shift route is provided for the
denominator terms; it needs no superposition of the shifted and unshifted
ansatz states and is the one the sampling mode uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cost import (SingularOperatorError, apply_factor_product, denominator,
                   expectation, numerator_hadamard)
from .operators import ObservableTerm, PoissonOperator, shift_amplitudes
from .states import AnsatzCircuit, Statevector, prepare_ansatz_state


@dataclass(frozen=True)
class GradientReport:
    grad: np.ndarray
    norm: float


def shifted_state(circuit: AnsatzCircuit, theta: np.ndarray, index: int) -> Statevector:
    """U(theta with theta[index] += pi)|0...0>; twice the state derivative."""
    theta = np.asarray(theta, dtype=float)
    if not 0 <= index < circuit.parameter_count:
        raise ValueError(f"parameter index {index} out of range")
    shifted = theta.copy()
    shifted[index] += np.pi
    return prepare_ansatz_state(circuit, shifted)


def _batch_single_qubit(batch: np.ndarray, qubit: int,
                        m00: float, m01: float, m10: float, m11: float) -> None:
    view = batch.reshape(batch.shape[0], -1, 2, 1 << qubit)
    top = view[:, :, 0, :].copy()
    bot = view[:, :, 1, :]
    view[:, :, 0, :] = m00 * top + m01 * bot
    view[:, :, 1, :] = m10 * top + m11 * bot


def gradient_states(circuit: AnsatzCircuit, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(psi, batch) amplitudes with batch[i] the theta_i + pi shifted state."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (circuit.parameter_count,):
        raise ValueError(
            f"theta must have length {circuit.parameter_count}, got shape {theta.shape}"
        )
    n = circuit.n_qubits
    count = circuit.parameter_count
    batch = np.zeros((count + 1, 1 << n), dtype=np.complex128)
    batch[:, 0] = 1.0
    idx = np.arange(1 << n)

    def ry_column(base: int) -> None:
        for q in range(n):
            angle = theta[base + q]
            c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
            _batch_single_qubit(batch, q, c, -s, s, c)
            # extra R_Y(pi) on the row owning this parameter
            row = batch[base + q].reshape(-1, 2, 1 << q)
            top = row[:, 0, :].copy()
            row[:, 0, :] = -row[:, 1, :]
            row[:, 1, :] = top

    ry_column(0)
    for layer in range(circuit.n_layers):
        for a, b in circuit.entangler_pairs(layer):
            both = (((idx >> a) & 1) & ((idx >> b) & 1)) == 1
            batch[:, both] *= -1.0
        ry_column((layer + 1) * n)
    return batch[count], batch[:count]


def _batch_shift(batch: np.ndarray, axes: tuple[int, ...],
                 shifts: tuple[int, ...]) -> np.ndarray:
    if not any(shifts):
        return batch
    if len(axes) == 1:
        return np.roll(batch, shifts[0], axis=1)
    rows = batch.shape[0]
    arr = batch.reshape((rows,) + tuple(1 << a for a in reversed(axes)))
    for k, s in enumerate(shifts):
        if s:
            arr = np.roll(arr, s, axis=1 + len(axes) - 1 - k)
    return arr.reshape(rows, -1)


def _batch_cross_terms(op_terms, axes: tuple[int, ...], batch: np.ndarray,
                       psi: np.ndarray) -> np.ndarray:
    """Components sum_t coeff_t * Re <P^s batch_i | M_t | P^s psi>."""
    out = np.zeros(batch.shape[0])
    for term in op_terms:
        psi_s = shift_amplitudes(psi, axes, term.axis_shifts)
        batch_s = _batch_shift(batch, axes, term.axis_shifts)
        m_psi = apply_factor_product(term, psi_s)
        out += term.coefficient * np.real(np.conj(batch_s) @ m_psi)
    return out


def grad_numerator(circuit: AnsatzCircuit, theta: np.ndarray, f: Statevector) -> np.ndarray:
    """Components (1/2) Re<psi_{,i}|f> of the numerator gradient."""
    _, batch = gradient_states(circuit, theta)
    return 0.5 * np.real(np.conj(batch) @ f.amplitudes)


def grad_denominator(op: PoissonOperator, circuit: AnsatzCircuit,
                     theta: np.ndarray) -> np.ndarray:
    """Components Re<psi_{,i}|A|psi> of the denominator gradient.

    Evaluated term by term through the superposition-state identity; the
    constant offset contributes exactly zero (Re<psi_{,i}|psi> = 0).
    """
    psi, batch = gradient_states(circuit, theta)
    return _batch_cross_terms(op.terms, op.axes, batch, psi)


def term_gradient(term: ObservableTerm, circuit: AnsatzCircuit, theta: np.ndarray,
                  axes: tuple[int, ...] | None = None) -> np.ndarray:
    """Gradient of one term's expectation (barren-plateau diagnostics)."""
    if axes is None:
        axes = (term.n_qubits,)
    psi, batch = gradient_states(circuit, theta)
    return _batch_cross_terms([term], axes, batch, psi)


def grad_cost(op: PoissonOperator, circuit: AnsatzCircuit, theta: np.ndarray,
              f: Statevector) -> GradientReport:
    """Assemble dE/d theta_i = -(1/2) num G_i / den + (1/2) num^2 D_i / den^2.

    G_i is the numerator evaluated on the pi-shifted superposition state and
    D_i the denominator cross term; both come from the pi-shift identity.
    """
    psi, batch = gradient_states(circuit, theta)
    state = Statevector(psi)
    num = numerator_hadamard(state, f)
    den = denominator(op, state)
    if den <= 0.0:
        raise SingularOperatorError(f"denominator {den} is not positive")
    g_num = np.real(np.conj(batch) @ f.amplitudes)
    d_den = _batch_cross_terms(op.terms, op.axes, batch, psi)
    grad = -0.5 * num * g_num / den + 0.5 * num * num * d_den / (den * den)
    return GradientReport(grad=grad, norm=float(np.linalg.norm(grad)))


def grad_cost_parameter_shift(op: PoissonOperator, circuit: AnsatzCircuit,
                              theta: np.ndarray, f: Statevector) -> GradientReport:
    """Same gradient through +-pi/2 shifts of the denominator terms.

    The numerator derivative still uses the single +pi evaluation; the
    denominator derivative becomes (den(+pi/2) - den(-pi/2))/2 per parameter,
    keeping every circuit on the bare n-qubit register.
    """
    theta = np.asarray(theta, dtype=float)
    psi = prepare_ansatz_state(circuit, theta)
    num = numerator_hadamard(psi, f)
    den = denominator(op, psi)
    if den <= 0.0:
        raise SingularOperatorError(f"denominator {den} is not positive")
    count = circuit.parameter_count
    g_num = np.empty(count)
    d_den = np.empty(count)
    for i in range(count):
        g_num[i] = numerator_hadamard(shifted_state(circuit, theta, i), f)
        plus = theta.copy()
        plus[i] += np.pi / 2.0
        minus = theta.copy()
        minus[i] -= np.pi / 2.0
        psi_p = prepare_ansatz_state(circuit, plus)
        psi_m = prepare_ansatz_state(circuit, minus)
        d_den[i] = 0.5 * (
            sum(expectation(t, psi_p, op.axes) for t in op.terms)
            - sum(expectation(t, psi_m, op.axes) for t in op.terms)
        )
    grad = -0.5 * num * g_num / den + 0.5 * num * num * d_den / (den * den)
    return GradientReport(grad=grad, norm=float(np.linalg.norm(grad)))


def finite_difference_gradient(fn: Callable[[np.ndarray], float], theta: np.ndarray,
                               step: float = 1e-5) -> np.ndarray:
    """Central finite differences of a scalar function (oracle for tests)."""
    theta = np.asarray(theta, dtype=float)
    out = np.empty(theta.size)
    for i in range(theta.size):
        plus = theta.copy()
        plus[i] += step
        minus = theta.copy()
        minus[i] -= step
        out[i] = (fn(plus) - fn(minus)) / (2.0 * step)
    return out
