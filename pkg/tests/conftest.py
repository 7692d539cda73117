import numpy as np
import pytest

from ergolock import (
    DensityOperator,
    DiagonalHamiltonian,
    GaussianWeight,
    skrzypczyk_bath,
)

# Worked single-qubit example: omega = T = 1, Gaussian weight sigma = omega.
GAMMA = float(np.exp(-1.0 / 8.0))


@pytest.fixture
def qubit_h() -> DiagonalHamiltonian:
    return DiagonalHamiltonian([0.0, 1.0])


@pytest.fixture
def plus_state() -> DensityOperator:
    return DensityOperator(np.full((2, 2), 0.5, dtype=complex))


@pytest.fixture
def dephased_plus() -> DensityOperator:
    return DensityOperator(np.array([[0.5, 0.5 * GAMMA], [0.5 * GAMMA, 0.5]], dtype=complex))


@pytest.fixture
def n1_bath():
    return skrzypczyk_bath(1, 1.0, 1.0)


@pytest.fixture
def unit_gaussian() -> GaussianWeight:
    return GaussianWeight(sigma=1.0)
