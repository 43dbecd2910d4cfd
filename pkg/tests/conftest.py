import numpy as np
import pytest

import chanspec as cs

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (np.eye(2, dtype=complex), SIGMA_X, SIGMA_Y, SIGMA_Z)


def bit_flip_kraus(p: float) -> cs.KrausSet:
    return cs.KrausSet.from_operators([np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * SIGMA_X])


def amplitude_damping_kraus(gamma: float) -> cs.KrausSet:
    k0 = np.diag([1.0, np.sqrt(1.0 - gamma)]).astype(complex)
    k1 = np.zeros((2, 2), dtype=complex)
    k1[0, 1] = np.sqrt(gamma)
    return cs.KrausSet.from_operators([k0, k1])


def depolarizing_kraus(eta: float) -> cs.KrausSet:
    """Pauli channel with scalar Bloch map eta * identity."""
    p = (1.0 - eta) / 4.0
    weights = [1.0 - 3.0 * p, p, p, p]
    return cs.KrausSet.from_operators(
        [np.sqrt(w) * sigma for w, sigma in zip(weights, PAULIS)]
    )


def fully_depolarizing_kraus() -> cs.KrausSet:
    return cs.KrausSet.from_operators([sigma / 2.0 for sigma in PAULIS])


@pytest.fixture(scope="session")
def qubit_pool():
    """300 random CPTP qubit channels of mixed Kraus rank, with transfer forms."""
    channels = []
    for i in range(300):
        ks = cs.sample_cptp(2, 1 + i % 4, seed=10_000 + i)
        phi = cs.kraus_to_superoperator(ks)
        channels.append((ks, phi, cs.superoperator_to_transfer(phi)))
    return channels
