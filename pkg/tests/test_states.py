import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from vqa_poisson import (AnsatzCircuit, CustomSource, Statevector, StepFunctionSource,
                         apply_cnot, apply_cz, apply_h, apply_mcx, apply_ry, apply_x,
                         prepare_ansatz_state, prepare_source_state,
                         prepare_superposition_state)

from conftest import random_real_state


def test_x_flips_qubit_one_of_two():
    state = apply_x(Statevector.zero(2), 1)
    np.testing.assert_allclose(state.amplitudes, [0, 0, 1, 0])


def test_h_on_single_qubit():
    state = apply_h(Statevector.zero(1), 0)
    np.testing.assert_allclose(state.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2)])


def test_ry_pi_rotates_to_one():
    state = apply_ry(Statevector.zero(1), np.pi, 0)
    np.testing.assert_allclose(state.amplitudes, [0, 1], atol=1e-15)


def test_cz_flips_sign_of_11():
    state = Statevector(np.full(4, 0.5))
    out = apply_cz(state, 0, 1)
    np.testing.assert_allclose(out.amplitudes, [0.5, 0.5, 0.5, -0.5])


def test_cnot_and_mcx():
    out = apply_cnot(Statevector.basis(2, 1), 0, 1)
    np.testing.assert_allclose(out.amplitudes, [0, 0, 0, 1])
    out = apply_mcx(Statevector.basis(3, 3), [0, 1], 2)
    np.testing.assert_allclose(out.amplitudes, Statevector.basis(3, 7).amplitudes)
    # controls not all set: no flip
    out = apply_mcx(Statevector.basis(3, 1), [0, 1], 2)
    np.testing.assert_allclose(out.amplitudes, Statevector.basis(3, 1).amplitudes)


@pytest.mark.parametrize("qubits", [(-1,), (2,)])
def test_out_of_range_qubit_rejected(qubits):
    with pytest.raises(ValueError):
        apply_x(Statevector.zero(2), qubits[0])


def test_duplicate_qubits_rejected():
    with pytest.raises(ValueError):
        apply_cz(Statevector.zero(2), 1, 1)
    with pytest.raises(ValueError):
        apply_mcx(Statevector.zero(3), [0, 0], 1)


def test_statevector_rejects_bad_lengths():
    with pytest.raises(ValueError):
        Statevector(np.ones(3))
    with pytest.raises(ValueError):
        Statevector(np.ones(1))


def test_norm_preservation_over_random_sequences(rng):
    # 1000 random gates in total across 200 sequences
    for _ in range(200):
        n = int(rng.integers(1, 6))
        state = random_real_state(rng, n)
        for _ in range(5):
            kind = rng.integers(0, 5)
            q = int(rng.integers(0, n))
            if kind == 0:
                state = apply_x(state, q)
            elif kind == 1:
                state = apply_h(state, q)
            elif kind == 2:
                state = apply_ry(state, float(rng.uniform(0, 2 * np.pi)), q)
            elif kind == 3 and n > 1:
                p = int(rng.integers(0, n - 1))
                state = apply_cz(state, p, p + 1)
            elif n > 1:
                p = int(rng.integers(0, n - 1))
                state = apply_cnot(state, p, p + 1)
        assert abs(state.norm() - 1.0) < 1e-10


def test_ansatz_zero_angles_is_identity_on_vacuum():
    circuit = AnsatzCircuit(2, 1)
    state = prepare_ansatz_state(circuit, np.zeros(circuit.parameter_count))
    np.testing.assert_allclose(state.amplitudes, [1, 0, 0, 0], atol=1e-15)


def test_ansatz_single_ry_column():
    circuit = AnsatzCircuit(1, 0)
    state = prepare_ansatz_state(circuit, np.array([np.pi / 2]))
    np.testing.assert_allclose(state.amplitudes, [np.cos(np.pi / 4), np.sin(np.pi / 4)])


def test_ansatz_parameter_count_and_pairs():
    circuit = AnsatzCircuit(4, 3)
    assert circuit.parameter_count == 16
    assert circuit.entangler_pairs(0) == [(0, 1), (2, 3)]
    assert circuit.entangler_pairs(1) == [(1, 2)]


def test_ansatz_rejects_wrong_theta_length():
    circuit = AnsatzCircuit(3, 5)
    with pytest.raises(ValueError):
        prepare_ansatz_state(circuit, np.zeros(5))


@settings(max_examples=25, deadline=None)
@seed(20240817)
@given(st.integers(0, 2**32 - 1))
def test_ansatz_state_is_real_unit_vector(entropy):
    rng = np.random.default_rng(entropy)
    circuit = AnsatzCircuit(3, 5)
    state = prepare_ansatz_state(circuit, rng.uniform(0, 4 * np.pi, circuit.parameter_count))
    assert abs(state.norm() - 1.0) < 1e-10
    assert np.max(np.abs(state.amplitudes.imag)) < 1e-12


def test_step_source_small_registers():
    np.testing.assert_allclose(prepare_source_state(2).amplitudes,
                               [0.5, 0.5, -0.5, -0.5], atol=1e-15)
    np.testing.assert_allclose(prepare_source_state(1).amplitudes,
                               [1 / np.sqrt(2), -1 / np.sqrt(2)], atol=1e-15)


def test_step_source_three_qubits_is_step():
    state = prepare_source_state(3)
    expected = np.concatenate([np.full(4, 1 / np.sqrt(8)), np.full(4, -1 / np.sqrt(8))])
    np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)


def test_step_source_inverse_roundtrip(rng):
    source = StepFunctionSource()
    state = random_real_state(rng, 3)
    back = source.apply_inverse(source.apply(state))
    np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)


def test_custom_source_without_inverse_rejects():
    source = CustomSource(forward=lambda s: s)
    with pytest.raises(ValueError):
        source.apply_inverse(Statevector.zero(1))
    with pytest.raises(ValueError):
        source.gate_count(1)


def test_superposition_of_equal_states():
    zero = Statevector.zero(1)
    sup = prepare_superposition_state(zero, zero)
    np.testing.assert_allclose(sup.amplitudes,
                               [1 / np.sqrt(2), 0, 1 / np.sqrt(2), 0])


def test_superposition_of_orthogonal_states():
    sup = prepare_superposition_state(Statevector.basis(1, 0), Statevector.basis(1, 1))
    np.testing.assert_allclose(sup.amplitudes, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])


def test_superposition_rejects_size_mismatch():
    with pytest.raises(ValueError):
        prepare_superposition_state(Statevector.zero(1), Statevector.zero(2))


@settings(max_examples=30, deadline=None)
@seed(20240817)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_ancilla_x_expectation_equals_real_overlap(entropy, n):
    rng = np.random.default_rng(entropy)
    a = random_real_state(rng, n)
    b = random_real_state(rng, n)
    sup = prepare_superposition_state(a, b)
    # <X on ancilla> done directly on the amplitude vector
    half = 1 << n
    x_expect = 2.0 * np.real(np.vdot(sup.amplitudes[:half], sup.amplitudes[half:]))
    assert abs(x_expect - np.real(a.inner(b))) < 1e-12
