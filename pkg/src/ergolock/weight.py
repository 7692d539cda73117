"""Work-reservoir (weight) models and the channel they induce on the system.

Averaging the system's free evolution over the weight's time distribution
multiplies each coherence rho_ij by the characteristic function of that
distribution at the level splitting e_i - e_j. The channel is applied in
this closed form, entrywise and exactly, rather than by time integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .spectra import DensityOperator, DiagonalHamiltonian


@dataclass(frozen=True)
class GaussianWeight:
    """Weight in a Gaussian superposition of energy states with spread sigma."""

    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError("sigma must be positive and finite")


@dataclass(frozen=True)
class TimeStateWeight:
    """Sharp time state: the unitary limit of infinite weight coherence."""

    t: float = 0.0


@dataclass(frozen=True)
class EnergyEigenstateWeight:
    """Sharp energy state: fully dephases the system in the energy basis."""


@dataclass(frozen=True)
class CustomWeight:
    """Weight defined by a user-supplied characteristic function phi(delta).

    phi(0) = 1 is checked here; positive-definiteness of phi is only enforced
    a posteriori through the PSD guard on the output state.
    """

    phi: Callable[[float], complex]

    def __post_init__(self):
        if abs(complex(self.phi(0.0)) - 1.0) > 1e-12:
            raise ValueError("characteristic function must satisfy phi(0) = 1")


WeightModel = Union[GaussianWeight, TimeStateWeight, EnergyEigenstateWeight, CustomWeight]


def characteristic_factor(weight: WeightModel, delta: float) -> complex:
    """Coherence scaling factor phi(delta) for a level splitting delta."""
    if isinstance(weight, GaussianWeight):
        return complex(math.exp(-(delta * delta) / (8.0 * weight.sigma * weight.sigma)))
    if isinstance(weight, TimeStateWeight):
        return complex(np.exp(-1j * delta * weight.t))
    if isinstance(weight, EnergyEigenstateWeight):
        return complex(1.0 if delta == 0.0 else 0.0)
    if isinstance(weight, CustomWeight):
        return complex(weight.phi(delta))
    raise TypeError(f"unknown weight model {type(weight).__name__}")


def _factor_matrix(weight: WeightModel, energies: np.ndarray) -> np.ndarray:
    delta = np.subtract.outer(energies, energies)
    if isinstance(weight, GaussianWeight):
        return np.exp(-(delta * delta) / (8.0 * weight.sigma * weight.sigma))
    if isinstance(weight, TimeStateWeight):
        return np.exp(-1j * delta * weight.t)
    if isinstance(weight, EnergyEigenstateWeight):
        # Exact comparison: coherences inside degenerate subspaces survive.
        return np.where(delta == 0.0, 1.0, 0.0)
    if isinstance(weight, CustomWeight):
        factors = np.vectorize(weight.phi, otypes=[np.complex128])(delta)
        if float(np.max(np.abs(factors))) > 1.0 + 1e-12:
            raise ValueError("characteristic function exceeds modulus 1")
        return factors
    raise TypeError(f"unknown weight model {type(weight).__name__}")


def control_marginal(
    rho: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    weight: WeightModel,
) -> DensityOperator:
    """Effective system state after averaging over the weight's time
    distribution: sigma_ij = rho_ij * phi(e_i - e_j).

    The diagonal is untouched, so energy is preserved exactly. Construction
    revalidates the result; a failure there flags a characteristic function
    that is not positive definite (impossible for the built-in models).
    """
    if rho.dim != hamiltonian.dim:
        raise ValueError("state and Hamiltonian dimensions differ")
    scaled = rho.entries * _factor_matrix(weight, hamiltonian.energies)
    try:
        return DensityOperator(scaled)
    except ValueError as exc:
        raise ValueError(f"weight model produced an invalid output state: {exc}") from exc
