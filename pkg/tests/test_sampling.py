import numpy as np
import pytest

from vqa_poisson import (AnsatzCircuit, BoundaryCondition, ObservableTerm,
                         PoissonOperator, Statevector, UnstableEstimateError,
                         ancilla_x_term, cost, decompose, derive_seed, grad_cost,
                         numerator_hadamard, predict_mse, prepare_ansatz_state,
                         prepare_source_state, prepare_superposition_state, sample_cost,
                         sample_cost_estimates, sample_term, sampled_gradient,
                         term_shot_moments)
from vqa_poisson.operators import FACTOR_I, FACTOR_P0, FACTOR_X

from conftest import random_theta

DIRICHLET = BoundaryCondition.DIRICHLET


def x_term(n, coeff=-1.0, shift=0):
    return ObservableTerm(coeff, tuple(FACTOR_X if q == 0 else FACTOR_I for q in range(n)),
                          (shift,))


def test_eigenstate_sampling_has_zero_variance():
    plus = Statevector(np.full(2, 1 / np.sqrt(2)))
    est = sample_term(x_term(1, coeff=-1.0), plus, shots=64, seed=7)
    assert est.mean == -1.0
    assert est.sample_variance == 0.0
    assert est.shots == 64


def test_projector_term_misses_deterministically():
    term = ObservableTerm(1.0, (FACTOR_I, FACTOR_P0), (0,))
    est = sample_term(term, Statevector.basis(2, 2), shots=32, seed=1)
    assert est.mean == 0.0


def test_sampling_concentrates_at_root_s():
    # <I (x) X> on |00> is 0; binomial concentration at S = 1e4
    est = sample_term(x_term(2, coeff=1.0), Statevector.zero(2), shots=10**4, seed=11)
    assert abs(est.mean) < 5.0 / np.sqrt(10**4)


def test_sample_term_rejects_bad_shots():
    with pytest.raises(ValueError):
        sample_term(x_term(1), Statevector.zero(1), shots=0, seed=0)


def test_determinism_and_stream_independence():
    # generic (non-stabilizer) state so shots actually fluctuate
    psi = prepare_ansatz_state(AnsatzCircuit(3, 3), np.linspace(0.2, 2.8, 12))
    a = sample_term(x_term(3), psi, shots=500, seed=42)
    b = sample_term(x_term(3), psi, shots=500, seed=42)
    assert a == b
    assert a.sample_variance > 0
    others = [sample_term(x_term(3), psi, shots=500, seed=s).mean for s in range(43, 48)]
    assert any(mean != a.mean for mean in others)


def test_derive_seed_is_stable_and_keyed():
    assert derive_seed(42, 1, 2) == derive_seed(42, 1, 2)
    assert derive_seed(42, 1, 2) != derive_seed(42, 2, 1)
    assert derive_seed(42, 1) != derive_seed(43, 1)


def test_unbiasedness_of_term_means():
    psi = prepare_ansatz_state(AnsatzCircuit(2, 2), np.linspace(0.3, 3.1, 6))
    term = x_term(2, coeff=-1.0, shift=1)
    exact, variance = term_shot_moments(term, psi)
    assert variance > 0
    reps, shots = 200, 1000
    means = [sample_term(term, psi, shots, derive_seed(99, r)).mean for r in range(reps)]
    tolerance = 4.0 * np.sqrt(variance) / np.sqrt(reps * shots)
    assert abs(np.mean(means) - exact) < tolerance


def test_term_shot_moments_match_expectation():
    from vqa_poisson import expectation
    psi = prepare_ansatz_state(AnsatzCircuit(3, 2),
                               np.linspace(0.1, 2.0, 9))
    op = decompose(3, BoundaryCondition.NEUMANN, 1e-3)
    for term in op.terms:
        mean, variance = term_shot_moments(term, psi, op.axes)
        assert mean == pytest.approx(expectation(term, psi, op.axes), abs=1e-12)
        assert variance >= -1e-15


def test_ancilla_term_samples_the_numerator():
    psi = prepare_ansatz_state(AnsatzCircuit(2, 1), np.array([0.3, 0.9, 1.4, 0.2]))
    f = prepare_source_state(2)
    sup = prepare_superposition_state(f, psi)
    mean, _ = term_shot_moments(ancilla_x_term(2), sup)
    assert mean == pytest.approx(numerator_hadamard(psi, f), abs=1e-12)


def test_sample_cost_converges_to_exact(rng):
    op = decompose(2, DIRICHLET)
    circuit = AnsatzCircuit(2, 2)
    f = prepare_source_state(2)
    theta = random_theta(rng, circuit)
    exact = cost(op, circuit, theta, f)
    report, estimates = sample_cost_estimates(op, circuit, theta, f, 200_000, seed=3)
    assert len(estimates) == 1 + len(op.terms)
    assert report.energy == pytest.approx(exact.energy, abs=0.02)
    assert report.numerator == pytest.approx(exact.numerator, abs=0.02)


def test_sample_cost_is_deterministic(rng):
    op = decompose(3, DIRICHLET)
    circuit = AnsatzCircuit(3, 2)
    f = prepare_source_state(3)
    theta = random_theta(rng, circuit)
    a = sample_cost(op, circuit, theta, f, 256, seed=5)
    b = sample_cost(op, circuit, theta, f, 256, seed=5)
    assert a == b


def test_sample_cost_supports_per_term_shots(rng):
    op = decompose(2, DIRICHLET)
    circuit = AnsatzCircuit(2, 1)
    f = prepare_source_state(2)
    theta = random_theta(rng, circuit)
    shots = [64, 128, 256, 512]
    _, estimates = sample_cost_estimates(op, circuit, theta, f, shots, seed=8)
    assert [e.shots for e in estimates] == shots
    with pytest.raises(ValueError):
        sample_cost_estimates(op, circuit, theta, f, [64, 64], seed=8)


def test_unstable_denominator_raises():
    # negative offset forces every sampled denominator below zero
    op = PoissonOperator((1,), DIRICHLET, (), -1.0)
    circuit = AnsatzCircuit(1, 0)
    f = prepare_source_state(1)
    with pytest.raises(UnstableEstimateError):
        sample_cost(op, circuit, np.array([0.2]), f, 16, seed=0)


def test_predict_mse_basics():
    assert predict_mse(0.5, [0.0, 0.0], 100).predicted_mse == 0.0
    single = predict_mse(0.7, [0.3, 0.2], 100).predicted_mse
    doubled = predict_mse(0.7, [0.3, 0.2], 200).predicted_mse
    assert doubled == pytest.approx(single / 2.0, rel=1e-12)


def test_predict_mse_frozen_example():
    # r = 2/3, sigma1^2 = 0.5, one denominator term sigma^2 = 0.25, S = 100
    prediction = predict_mse(2.0 / 3.0, [0.5, 0.25], 100)
    assert prediction.predicted_mse == pytest.approx(19.0 / 8100.0, rel=1e-12)


def test_predict_mse_rejects_bad_shots():
    with pytest.raises(ValueError):
        predict_mse(0.5, [0.1, 0.1], [100, 0])


def test_empirical_mse_tracks_prediction(rng):
    n, shots, reps = 2, 1024, 100
    op = decompose(n, DIRICHLET)
    circuit = AnsatzCircuit(n, 5)
    f = prepare_source_state(n)
    theta = random_theta(rng, circuit)
    exact = cost(op, circuit, theta, f)
    psi = prepare_ansatz_state(circuit, theta)
    sup = prepare_superposition_state(f, psi)
    variances = [term_shot_moments(ancilla_x_term(n), sup)[1]]
    variances += [term_shot_moments(t, psi, op.axes)[1] for t in op.terms]
    predicted = predict_mse(exact.r_opt, variances, shots).predicted_mse
    errors = []
    for r in range(reps):
        est = sample_cost(op, circuit, theta, f, shots, derive_seed(12, r))
        errors.append((est.energy - exact.energy) ** 2)
    empirical = float(np.mean(errors))
    assert empirical < 3.0 * predicted
    assert empirical > predicted / 3.0


def test_sampled_gradient_approaches_exact(rng):
    op = decompose(2, DIRICHLET)
    circuit = AnsatzCircuit(2, 2)
    f = prepare_source_state(2)
    theta = random_theta(rng, circuit)
    exact = grad_cost(op, circuit, theta, f).grad
    sampled = sampled_gradient(op, circuit, theta, f, 100_000, seed=21)
    np.testing.assert_allclose(sampled, exact, atol=0.02)
