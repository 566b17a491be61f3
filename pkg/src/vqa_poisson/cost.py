"""Potential-energy cost evaluation in exact statevector mode.

The cost is E = -(1/2) * numerator^2 / denominator with
numerator = <f,psi| X (x) I |f,psi> (ancilla Hadamard test, equals Re<psi|f>)
and denominator = <psi|A|psi> assembled from the operator's measured terms
plus its constant offset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import FACTOR_P0, FACTOR_X, ObservableTerm, PoissonOperator, shift_amplitudes
from .states import AnsatzCircuit, Statevector, prepare_ansatz_state, prepare_superposition_state


class SingularOperatorError(RuntimeError):
    """<psi|A|psi> is not positive; the operator needs regularization."""


@dataclass(frozen=True)
class CostReport:
    numerator: float
    denominator: float
    r_opt: float
    energy: float


@dataclass(frozen=True)
class BaselineCostReport:
    """Prior-method cost <psi|A(I - |f><f|)A|psi> and its norm estimate."""

    cost: float
    r: float


def _factor_masks(factors: tuple[str, ...]) -> tuple[int, int]:
    xmask = 0
    pmask = 0
    for q, f in enumerate(factors):
        if f == FACTOR_X:
            xmask |= 1 << q
        elif f == FACTOR_P0:
            pmask |= 1 << q
    return xmask, pmask


def apply_factor_product(term: ObservableTerm, amps: np.ndarray) -> np.ndarray:
    """M|phi> for the term's factor product (no shifts, no coefficient)."""
    xmask, pmask = _factor_masks(term.factors)
    idx = np.arange(amps.size)
    out = amps
    if xmask:
        out = out[idx ^ xmask]
    if pmask:
        out = np.where((idx & pmask) == 0, out, 0.0)
    return out


def _default_axes(term: ObservableTerm, axes: tuple[int, ...] | None) -> tuple[int, ...]:
    return (term.n_qubits,) if axes is None else axes


def expectation(term: ObservableTerm, state: Statevector,
                axes: tuple[int, ...] | None = None) -> float:
    """coefficient * <P^s phi | M | P^s phi> for the term's shifts s and factors M."""
    if term.n_qubits != state.n_qubits:
        raise ValueError(
            f"term acts on {term.n_qubits} qubits, state has {state.n_qubits}"
        )
    axes = _default_axes(term, axes)
    shifted = shift_amplitudes(state.amplitudes, axes, term.axis_shifts)
    return float(term.coefficient * np.real(np.vdot(shifted, apply_factor_product(term, shifted))))


def cross_expectation(term: ObservableTerm, left: Statevector, right: Statevector,
                      axes: tuple[int, ...] | None = None) -> float:
    """coefficient * Re <P^s left | M | P^s right>.

    Equals the ancilla-X expectation of X (x) (coeff * P^-s M P^s) on the
    superposition state (|0>|left> + |1>|right>)/sqrt(2).
    """
    if term.n_qubits != left.n_qubits or left.n_qubits != right.n_qubits:
        raise ValueError("register sizes differ")
    axes = _default_axes(term, axes)
    a = shift_amplitudes(left.amplitudes, axes, term.axis_shifts)
    b = shift_amplitudes(right.amplitudes, axes, term.axis_shifts)
    return float(term.coefficient * np.real(np.vdot(a, apply_factor_product(term, b))))


def denominator(op: PoissonOperator, psi: Statevector) -> float:
    """<psi|A|psi> = constant offset + sum of measured-term expectations."""
    if op.n_qubits != psi.n_qubits:
        raise ValueError(f"operator acts on {op.n_qubits} qubits, state has {psi.n_qubits}")
    return op.constant_offset + sum(expectation(t, psi, op.axes) for t in op.terms)


def numerator_hadamard(psi: Statevector, f: Statevector) -> float:
    """Ancilla-X expectation on (|0>|f> + |1>|psi>)/sqrt(2); equals Re<psi|f>."""
    if psi.n_qubits != f.n_qubits:
        raise ValueError("register sizes differ")
    sup = prepare_superposition_state(f, psi)
    half = 1 << psi.n_qubits
    amps = sup.amplitudes
    return float(2.0 * np.real(np.vdot(amps[:half], amps[half:])))


def numerator_overlap(psi: Statevector, source) -> float:
    """|<psi|f>| from the all-zeros probability after the inverse source unitary.

    Sign is not recovered; use the Hadamard-test route where the sign matters.
    """
    inv = source.apply_inverse(psi)
    return float(np.sqrt(np.abs(inv.amplitudes[0]) ** 2))


def cost_from_state(op: PoissonOperator, psi: Statevector, f: Statevector) -> CostReport:
    num = numerator_hadamard(psi, f)
    den = denominator(op, psi)
    if den <= 0.0:
        raise SingularOperatorError(
            f"denominator {den} is not positive; add regularization epsilon"
        )
    return CostReport(
        numerator=num,
        denominator=den,
        r_opt=num / den,
        energy=-0.5 * num * num / den,
    )


def cost(op: PoissonOperator, circuit: AnsatzCircuit, theta: np.ndarray,
         f: Statevector) -> CostReport:
    """Evaluate numerator, denominator, r_opt and the energy at one theta."""
    psi = prepare_ansatz_state(circuit, theta)
    return cost_from_state(op, psi, f)


def measured_circuit_count(op: PoissonOperator) -> int:
    """Distinct circuits per cost evaluation: one numerator plus one per term."""
    return 1 + len(op.terms)


def baseline_cost(matrix: np.ndarray, psi: Statevector, f: Statevector) -> BaselineCostReport:
    """Prior-method cost <A^2> - <psi|A|f>^2 and norm r = 1/sqrt(<A^2>).

    Statevector-only comparison path; evaluated with the dense matrix.
    """
    apsi = matrix @ psi.amplitudes
    a2 = float(np.real(np.vdot(apsi, apsi)))
    af = float(np.real(np.vdot(f.amplitudes, apsi)))
    return BaselineCostReport(cost=a2 - af * af, r=1.0 / np.sqrt(a2))
