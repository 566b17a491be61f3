"""Dense statevector simulation of the gate set used by the solver circuits.

Index convention: basis state |i> stores qubit q in bit q of i, so qubit 0 is
the least-significant bit.  All gates here (X, H, R_Y, CZ, CNOT, MCX) are real
matrices; circuits built from them keep amplitudes real.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class Statevector:
    """Amplitude vector over n qubits (length 2^n, complex)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        size = amps.size
        if size < 2 or size & (size - 1):
            raise ValueError(f"amplitude vector length must be a power of two >= 2, got {size}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return int(self.amplitudes.size).bit_length() - 1

    @classmethod
    def zero(cls, n_qubits: int) -> "Statevector":
        return cls.basis(n_qubits, 0)

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> "Statevector":
        if n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
        if not 0 <= index < (1 << n_qubits):
            raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "Statevector") -> complex:
        """<self|other>."""
        if self.n_qubits != other.n_qubits:
            raise ValueError("register sizes differ")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _check_qubits(n_qubits: int, qubits: Sequence[int]) -> None:
    for q in qubits:
        if not 0 <= q < n_qubits:
            raise ValueError(f"qubit index {q} out of range for {n_qubits} qubits")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"qubit indices must be distinct, got {tuple(qubits)}")


def _single_qubit_inplace(amps: np.ndarray, qubit: int,
                          m00: float, m01: float, m10: float, m11: float) -> None:
    # Stride view: axis 1 is the target qubit's bit.
    view = amps.reshape(-1, 2, 1 << qubit)
    top = view[:, 0, :].copy()
    bot = view[:, 1, :]
    view[:, 0, :] = m00 * top + m01 * bot
    view[:, 1, :] = m10 * top + m11 * bot


def _cz_inplace(amps: np.ndarray, qubit_a: int, qubit_b: int) -> None:
    idx = np.arange(amps.size)
    both = ((idx >> qubit_a) & 1) & ((idx >> qubit_b) & 1)
    amps[both == 1] *= -1.0


def _controlled_x_inplace(amps: np.ndarray, controls: Sequence[int], target: int) -> None:
    idx = np.arange(amps.size)
    control_mask = 0
    for c in controls:
        control_mask |= 1 << c
    src = idx[((idx & control_mask) == control_mask) & (((idx >> target) & 1) == 0)]
    dst = src | (1 << target)
    amps[src], amps[dst] = amps[dst], amps[src]


def apply_x(state: Statevector, qubit: int) -> Statevector:
    """Pauli X on one qubit."""
    _check_qubits(state.n_qubits, [qubit])
    idx = np.arange(state.amplitudes.size)
    return Statevector(state.amplitudes[idx ^ (1 << qubit)])


def apply_h(state: Statevector, qubit: int) -> Statevector:
    """Hadamard on one qubit."""
    _check_qubits(state.n_qubits, [qubit])
    amps = state.amplitudes.copy()
    s = 1.0 / np.sqrt(2.0)
    _single_qubit_inplace(amps, qubit, s, s, s, -s)
    return Statevector(amps)


def apply_ry(state: Statevector, angle: float, qubit: int) -> Statevector:
    """R_Y(angle) rotation on one qubit."""
    _check_qubits(state.n_qubits, [qubit])
    amps = state.amplitudes.copy()
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    _single_qubit_inplace(amps, qubit, c, -s, s, c)
    return Statevector(amps)


def apply_cz(state: Statevector, qubit_a: int, qubit_b: int) -> Statevector:
    """Controlled-Z between two qubits (symmetric)."""
    _check_qubits(state.n_qubits, [qubit_a, qubit_b])
    amps = state.amplitudes.copy()
    _cz_inplace(amps, qubit_a, qubit_b)
    return Statevector(amps)


def apply_cnot(state: Statevector, control: int, target: int) -> Statevector:
    """Controlled-X with one control."""
    return apply_mcx(state, [control], target)


def apply_mcx(state: Statevector, controls: Sequence[int], target: int) -> Statevector:
    """Multi-controlled X (X on target where every control bit is 1)."""
    _check_qubits(state.n_qubits, [*controls, target])
    amps = state.amplitudes.copy()
    _controlled_x_inplace(amps, controls, target)
    return Statevector(amps)


@dataclass(frozen=True)
class AnsatzCircuit:
    """Alternating layered R_Y / controlled-Z ansatz.

    Structure for parameters theta (length n_qubits * (n_layers + 1)):
    an initial column of R_Y(theta[q]) on every qubit, then for each layer a
    controlled-Z entangler brick followed by another R_Y column.  The brick
    alternates by layer parity between pairs (0,1),(2,3),... and
    (1,2),(3,4),... on a line (no wrap-around).
    """

    n_qubits: int
    n_layers: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if self.n_layers < 0:
            raise ValueError(f"n_layers must be >= 0, got {self.n_layers}")

    @property
    def parameter_count(self) -> int:
        return self.n_qubits * (self.n_layers + 1)

    def entangler_pairs(self, layer: int) -> list[tuple[int, int]]:
        start = layer % 2
        return [(q, q + 1) for q in range(start, self.n_qubits - 1, 2)]


def prepare_ansatz_state(circuit: AnsatzCircuit, theta: np.ndarray) -> Statevector:
    """Simulate U(theta)|0...0> for the alternating layered ansatz."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (circuit.parameter_count,):
        raise ValueError(
            f"theta must have length {circuit.parameter_count}, got shape {theta.shape}"
        )
    n = circuit.n_qubits
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    for q in range(n):
        c, s = np.cos(theta[q] / 2.0), np.sin(theta[q] / 2.0)
        _single_qubit_inplace(amps, q, c, -s, s, c)
    for layer in range(circuit.n_layers):
        for a, b in circuit.entangler_pairs(layer):
            _cz_inplace(amps, a, b)
        base = (layer + 1) * n
        for q in range(n):
            c, s = np.cos(theta[base + q] / 2.0), np.sin(theta[base + q] / 2.0)
            _single_qubit_inplace(amps, q, c, -s, s, c)
    return Statevector(amps)


class StepFunctionSource:
    """Source unitary that prepares the +-2^{-n/2} step state.

    Applies X on the top qubit (n-1) and then H on every qubit, so amplitudes
    are +2^{-n/2} on the lower half of indices and -2^{-n/2} on the upper half.
    """

    def apply(self, state: Statevector) -> Statevector:
        state = apply_x(state, state.n_qubits - 1)
        for q in range(state.n_qubits):
            state = apply_h(state, q)
        return state

    def apply_inverse(self, state: Statevector) -> Statevector:
        for q in range(state.n_qubits):
            state = apply_h(state, q)
        return apply_x(state, state.n_qubits - 1)

    def gate_count(self, n_qubits: int) -> int:
        return n_qubits + 1


class CustomSource:
    """Caller-supplied source unitary.

    ``forward`` maps |0...0> to |f>; ``inverse`` (optional) is its adjoint and
    is required only by the overlap numerator route.  ``declared_gate_count``
    feeds the resource report (user-declared, not verified).
    """

    def __init__(self, forward: Callable[[Statevector], Statevector],
                 inverse: Callable[[Statevector], Statevector] | None = None,
                 declared_gate_count: int | None = None):
        self._forward = forward
        self._inverse = inverse
        self._declared_gate_count = declared_gate_count

    def apply(self, state: Statevector) -> Statevector:
        return self._forward(state)

    def apply_inverse(self, state: Statevector) -> Statevector:
        if self._inverse is None:
            raise ValueError("custom source unitary has no inverse; overlap route unavailable")
        return self._inverse(state)

    def gate_count(self, n_qubits: int) -> int:
        if self._declared_gate_count is None:
            raise ValueError("custom source unitary has no declared gate count")
        return self._declared_gate_count


def prepare_source_state(n_qubits: int, source=None) -> Statevector:
    """Prepare |f> = U_f |0...0>; defaults to the step-function source."""
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    if source is None:
        source = StepFunctionSource()
    return source.apply(Statevector.zero(n_qubits))


def prepare_superposition_state(a: Statevector, b: Statevector) -> Statevector:
    """(|0>|a> + |1>|b>)/sqrt(2) with the ancilla as the new top qubit."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("register sizes differ")
    amps = np.concatenate([a.amplitudes, b.amplitudes]) / np.sqrt(2.0)
    return Statevector(amps)
