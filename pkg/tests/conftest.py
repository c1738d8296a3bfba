import numpy as np
import pytest

from werner_channels.smallmat import ComplexMatrix


def random_hermitian(rng: np.random.Generator, dim: int = 4, scale: float = 1.0) -> ComplexMatrix:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return ComplexMatrix(scale * (z + z.conj().T) / 2)


def random_density(rng: np.random.Generator, dim: int = 4) -> ComplexMatrix:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = z @ z.conj().T
    return ComplexMatrix(rho / np.trace(rho))


@pytest.fixture
def rng():
    return np.random.default_rng(20091005)
