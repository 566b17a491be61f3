"""Discretized Poisson system matrices and their O(1) observable decompositions.

The measured parts of every operator are coefficient-weighted products of
single-qubit factors from {I, X, |0><0|}, optionally conjugated by cyclic
shifts of the node register.  Shift conjugation is always represented as a
state transformation, never as a dense matrix; dense forms exist only on the
verification path (:func:`reassemble_dense`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .states import Statevector

FACTOR_I = "I"
FACTOR_X = "X"
FACTOR_P0 = "0"  # |0><0| projector

_FACTOR_MATRICES = {
    FACTOR_I: np.eye(2),
    FACTOR_X: np.array([[0.0, 1.0], [1.0, 0.0]]),
    FACTOR_P0: np.array([[1.0, 0.0], [0.0, 0.0]]),
}

DENSE_QUBIT_CAP = 12


class BoundaryCondition(Enum):
    PERIODIC = "periodic"
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


DEFAULT_EPSILON = {
    BoundaryCondition.PERIODIC: 1e-3,
    BoundaryCondition.DIRICHLET: 0.0,
    BoundaryCondition.NEUMANN: 1e-3,
}


@dataclass(frozen=True)
class ObservableTerm:
    """One measured term: coefficient * (shifted) product of single-qubit factors.

    ``factors[q]`` acts on qubit q (qubit 0 = least-significant index bit).
    ``axis_shifts[k]`` is the shift power applied to axis register k before
    measuring; 1D operators use a single axis.
    """

    coefficient: float
    factors: tuple[str, ...]
    axis_shifts: tuple[int, ...] = (0,)

    def __post_init__(self):
        for f in self.factors:
            if f not in _FACTOR_MATRICES:
                raise ValueError(f"unknown factor kind {f!r}")

    @property
    def n_qubits(self) -> int:
        return len(self.factors)

    @property
    def shift_power(self) -> int:
        return self.axis_shifts[0]


@dataclass(frozen=True)
class PoissonOperator:
    """Boundary-tagged term list plus the constant (identity) offset.

    ``axes[k]`` is the qubit count of axis register k; axis 0 occupies the
    least-significant qubits.  Dense reassembly of ``terms`` plus
    ``constant_offset * I`` equals the full system matrix.
    """

    axes: tuple[int, ...]
    bc: BoundaryCondition
    terms: tuple[ObservableTerm, ...]
    constant_offset: float

    @property
    def n_qubits(self) -> int:
        return sum(self.axes)


def build_matrix(n: int, bc: BoundaryCondition, epsilon: float = 0.0) -> np.ndarray:
    """Dense 2^n x 2^n system matrix for one axis, plus epsilon * I.

    Summation order mirrors the decomposition (periodic base, then boundary
    corrections) so that reassembly of :func:`decompose` matches bit-exactly.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    size = 1 << n
    mat = np.zeros((size, size))
    np.fill_diagonal(mat, 2.0 + epsilon)
    for i in range(size - 1):
        mat[i, i + 1] -= 1.0
        mat[i + 1, i] -= 1.0
    mat[0, size - 1] -= 1.0
    mat[size - 1, 0] -= 1.0
    if bc is BoundaryCondition.DIRICHLET:
        mat[0, size - 1] += 1.0
        mat[size - 1, 0] += 1.0
    elif bc is BoundaryCondition.NEUMANN:
        mat[0, 0] -= 1.0
        mat[size - 1, size - 1] -= 1.0
        mat[0, size - 1] += 1.0
        mat[size - 1, 0] += 1.0
    return mat


def _single_factor(n: int, qubit: int, kind: str) -> tuple[str, ...]:
    return tuple(kind if q == qubit else FACTOR_I for q in range(n))


def decompose(n: int, bc: BoundaryCondition, epsilon: float = 0.0) -> PoissonOperator:
    """Split the system matrix into measured terms and a constant offset.

    Measured-term counts are 2 (periodic), 3 (Dirichlet) and 4 (Neumann) for
    n >= 2.  For n = 1 the Neumann projector-times-identity factor degenerates
    to the identity and is folded into the offset, leaving 3 measured terms.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    x_low = _single_factor(n, 0, FACTOR_X)
    terms = [
        ObservableTerm(-1.0, x_low, (0,)),
        ObservableTerm(-1.0, x_low, (1,)),
    ]
    offset = 2.0 + epsilon
    proj_x = tuple(FACTOR_X if q == 0 else FACTOR_P0 for q in range(n))
    if bc is BoundaryCondition.DIRICHLET:
        terms.append(ObservableTerm(1.0, proj_x, (1,)))
    elif bc is BoundaryCondition.NEUMANN:
        if n == 1:
            offset = 2.0 + epsilon - 1.0
        else:
            proj_i = tuple(FACTOR_I if q == 0 else FACTOR_P0 for q in range(n))
            terms.append(ObservableTerm(-1.0, proj_i, (1,)))
        terms.append(ObservableTerm(1.0, proj_x, (1,)))
    return PoissonOperator((n,), bc, tuple(terms), offset)


def apply_shift(state: Statevector, power: int) -> Statevector:
    """Cyclic shift P^power: amplitude at |i> moves to |(i+power) mod 2^n>."""
    return Statevector(np.roll(state.amplitudes, power))


def shift_amplitudes(amps: np.ndarray, axes: tuple[int, ...],
                     shifts: tuple[int, ...]) -> np.ndarray:
    """Apply per-axis cyclic shifts to a raw amplitude vector."""
    if not any(shifts):
        return amps
    if len(axes) == 1:
        return np.roll(amps, shifts[0])
    shape = tuple(1 << a for a in reversed(axes))
    arr = amps.reshape(shape)
    for k, s in enumerate(shifts):
        if s:
            arr = np.roll(arr, s, axis=len(axes) - 1 - k)
    return arr.reshape(-1)


def build_fdm_kron(n_per_axis: int, d: int, bc: BoundaryCondition,
                   epsilon: float = 0.0) -> PoissonOperator:
    """d-dimensional finite-difference operator as a Kronecker sum of 1D terms.

    The term list is the union of the 1D lists embedded on each axis register,
    so the measured-term count is d times the 1D count.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    base = decompose(n_per_axis, bc, 0.0)
    total = d * n_per_axis
    terms = []
    for axis in range(d):
        low = axis * n_per_axis
        for t in base.terms:
            factors = [FACTOR_I] * total
            factors[low:low + n_per_axis] = t.factors
            shifts = [0] * d
            shifts[axis] = t.shift_power
            terms.append(ObservableTerm(t.coefficient, tuple(factors), tuple(shifts)))
    offset = base.constant_offset * d + epsilon
    return PoissonOperator((n_per_axis,) * d, bc, tuple(terms), offset)


@dataclass(frozen=True)
class Mesh2D:
    """Periodic 2^{n_x} x 2^{n_y} quadrilateral mesh; node i = i_x + i_y * N_x."""

    n_x: int
    n_y: int

    def __post_init__(self):
        if self.n_x < 1 or self.n_y < 1:
            raise ValueError("mesh needs n_x >= 1 and n_y >= 1")

    @property
    def nodes_x(self) -> int:
        return 1 << self.n_x

    @property
    def nodes_y(self) -> int:
        return 1 << self.n_y


def fem_element_matrix() -> np.ndarray:
    """Unit-square bilinear element stiffness matrix, node order (00, 10, 01, 11)."""
    eye = _FACTOR_MATRICES[FACTOR_I]
    x = _FACTOR_MATRICES[FACTOR_X]
    return (4.0 * np.kron(eye, eye) - np.kron(eye, x)
            - np.kron(x, eye) - 2.0 * np.kron(x, x)) / 6.0


def build_fem_2d(mesh: Mesh2D, epsilon: float = 0.0,
                 bc: BoundaryCondition = BoundaryCondition.PERIODIC) -> PoissonOperator:
    """2D FEM stiffness operator from the four-tessellation cover.

    Each tessellation contributes one copy of the single-element tensor form,
    conjugated by per-axis shifts (0,0), (1,0), (0,1) and (1,1).  Only periodic
    boundaries are supported (boundary-adjusted tessellations are out of scope).
    """
    if bc is not BoundaryCondition.PERIODIC:
        raise NotImplementedError("2D FEM operator supports periodic boundaries only")
    n = mesh.n_x + mesh.n_y
    x_axis = _single_factor(n, 0, FACTOR_X)              # X on x-register low qubit
    y_axis = _single_factor(n, mesh.n_x, FACTOR_X)       # X on y-register low qubit
    xy = tuple(FACTOR_X if q in (0, mesh.n_x) else FACTOR_I for q in range(n))
    sixth = 1.0 / 6.0
    base = [(-sixth, x_axis), (-sixth, y_axis), (-2.0 / 6.0, xy)]
    terms = []
    for sx, sy in ((0, 0), (1, 0), (0, 1), (1, 1)):
        for coeff, factors in base:
            terms.append(ObservableTerm(coeff, factors, (sx, sy)))
    offset = 4.0 * (4.0 / 6.0) + epsilon
    return PoissonOperator((mesh.n_x, mesh.n_y), bc, tuple(terms), offset)


def assemble_fem_2d_dense(mesh: Mesh2D) -> np.ndarray:
    """Brute-force element-by-element FEM assembly with periodic wrap.

    Independent of the tessellation decomposition; accumulates integer sixths
    so the result is exact in floating point.
    """
    nx, ny = mesh.nodes_x, mesh.nodes_y
    size = nx * ny
    element6 = np.array([[4, -1, -1, -2],
                         [-1, 4, -2, -1],
                         [-1, -2, 4, -1],
                         [-2, -1, -1, 4]], dtype=np.int64)
    acc = np.zeros((size, size), dtype=np.int64)
    for ey in range(ny):
        for ex in range(nx):
            right = (ex + 1) % nx
            up = (ey + 1) % ny
            nodes = [ex + ey * nx, right + ey * nx, ex + up * nx, right + up * nx]
            for a in range(4):
                for b in range(4):
                    acc[nodes[a], nodes[b]] += element6[a, b]
    return acc / 6.0


def _shifted_indices(size: int, axes: tuple[int, ...],
                     shifts: tuple[int, ...]) -> np.ndarray:
    idx = np.arange(size)
    out = np.zeros_like(idx)
    low = 0
    for a, s in zip(axes, shifts):
        comp = (idx >> low) & ((1 << a) - 1)
        comp = (comp + s) % (1 << a)
        out |= comp << low
        low += a
    return out


def term_dense(term: ObservableTerm, axes: tuple[int, ...]) -> np.ndarray:
    """Dense matrix of one term (verification path only)."""
    dense = np.ones((1, 1))
    for f in term.factors:
        dense = np.kron(_FACTOR_MATRICES[f], dense)
    if any(term.axis_shifts):
        sigma = _shifted_indices(dense.shape[0], axes, term.axis_shifts)
        dense = dense[np.ix_(sigma, sigma)]
    return term.coefficient * dense


def reassemble_dense(op: PoissonOperator) -> np.ndarray:
    """Sum of dense term matrices plus the offset (verification path, n <= 12).

    Per-entry sums use math.fsum so that reassembly is correctly rounded and
    matches the directly assembled matrices bit-exactly.
    """
    n = op.n_qubits
    if n > DENSE_QUBIT_CAP:
        raise ValueError(f"dense reassembly capped at {DENSE_QUBIT_CAP} qubits, got {n}")
    size = 1 << n
    stack = [term_dense(t, op.axes) for t in op.terms]
    stack.append(op.constant_offset * np.eye(size))
    out = np.empty((size, size))
    for i in range(size):
        rows = [m[i] for m in stack]
        for j in range(size):
            out[i, j] = math.fsum(r[j] for r in rows)
    return out


def operator_to_json(op: PoissonOperator) -> str:
    """Serialize the term list to the documented JSON schema.

    Factor strings read left to right from the most-significant qubit, with
    '0' standing for the |0><0| projector; shifts are per-axis powers.
    """
    payload = {
        "axes": list(op.axes),
        "boundary": op.bc.value,
        "constant_offset": op.constant_offset,
        "terms": [
            {
                "coefficient": t.coefficient,
                "factors": "".join(reversed(t.factors)),
                "shifts": list(t.axis_shifts),
            }
            for t in op.terms
        ],
    }
    return json.dumps(payload, indent=2)


def operator_from_json(text: str) -> PoissonOperator:
    payload = json.loads(text)
    terms = tuple(
        ObservableTerm(
            float(t["coefficient"]),
            tuple(reversed(t["factors"])),
            tuple(int(s) for s in t["shifts"]),
        )
        for t in payload["terms"]
    )
    return PoissonOperator(
        tuple(int(a) for a in payload["axes"]),
        BoundaryCondition(payload["boundary"]),
        terms,
        float(payload["constant_offset"]),
    )
