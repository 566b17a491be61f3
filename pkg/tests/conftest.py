import numpy as np
import pytest

from vqa_poisson import Statevector


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_real_state(rng, n_qubits: int) -> Statevector:
    amps = rng.normal(size=1 << n_qubits)
    return Statevector(amps / np.linalg.norm(amps))


def random_theta(rng, circuit) -> np.ndarray:
    return rng.uniform(0.0, 4.0 * np.pi, circuit.parameter_count)
