"""Passive energy, ergotropy, and passive states.

The unitary minimization behind passive energy has a closed classical
solution: pair the state's probabilities sorted descending with the energy
levels sorted ascending. Everything in this module reduces to building the
right (prob, energy) lists and sorting them, which scales to multi-million
element joint spectra without ever touching a dense joint matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectra import (
    DEFAULT_EXPANSION_CAP,
    DensityOperator,
    DiagonalHamiltonian,
    FactorizedEnsemble,
    SpectralEnsemble,
    average_energy,
    compensated_dot,
    eigens,
    product_pairs,
    shannon_entropy,
)

ERGOTROPY_FLOOR = -1e-10


def _sorted_passive(probs: np.ndarray, energies: np.ndarray) -> float:
    # Value-only path: an unstable high-performance sort is fine here, the
    # stable ordering is only needed when a passive *state* is materialized.
    p_asc = np.sort(probs)
    e_asc = np.sort(energies)
    return compensated_dot(p_asc[::-1], e_asc)


def passive_energy(ensemble: SpectralEnsemble) -> float:
    """Minimal mean energy over all unitary reshufflings of the spectrum.

    Equals the dot product of probabilities sorted descending with energies
    sorted ascending; ties in either list cannot change the value.
    """
    return _sorted_passive(ensemble.probs, ensemble.energies)


def ergotropy(ensemble: SpectralEnsemble) -> float:
    """Maximal unitarily extractable energy: average minus passive energy."""
    value = average_energy(ensemble) - passive_energy(ensemble)
    if value < ERGOTROPY_FLOOR:
        raise ArithmeticError(f"ergotropy {value:.3e} below the numerical floor")
    return value


def _joint_pairs(
    system: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    bath: FactorizedEnsemble,
    cap: int,
) -> tuple[np.ndarray, np.ndarray]:
    # The returned positional pairing is arbitrary (system eigenbasis vs
    # energy basis); callers may only use the two multisets, never the pairs.
    if system.dim != hamiltonian.dim:
        raise ValueError("system state and Hamiltonian dimensions differ")
    return product_pairs(eigens(system), hamiltonian.energies, bath.factors, cap)


def _joint_average_energy(
    system: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    bath: FactorizedEnsemble,
) -> float:
    # E(rho x bath) = Tr[H_S rho] + E(bath); energy is additive over the
    # product, so the system eigenbasis never has to be materialized.
    system_energy = compensated_dot(system.diagonal(), hamiltonian.energies)
    return system_energy + sum(average_energy(f) for f in bath.factors)


def ergotropy_product(
    system: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    bath: FactorizedEnsemble,
    cap: int = DEFAULT_EXPANSION_CAP,
) -> float:
    """Ergotropy of (system state) x (factorized bath) under H_S + H_B.

    Only the flat joint (prob, energy) arrays are materialized and sorted;
    the mean energy is taken additively from the system matrix diagonal and
    the bath factors.
    """
    probs, energies = _joint_pairs(system, hamiltonian, bath, cap)
    value = _joint_average_energy(system, hamiltonian, bath) - _sorted_passive(probs, energies)
    if value < ERGOTROPY_FLOOR:
        raise ArithmeticError(f"ergotropy {value:.3e} below the numerical floor")
    return value


def passive_state(rho: DensityOperator, hamiltonian: DiagonalHamiltonian) -> DensityOperator:
    """Passive state of ``rho``: eigenvalues assigned descending onto the
    energy levels ascending, diagonal in the Hamiltonian's basis.

    The energy order uses a stable sort so the output is reproducible under
    degenerate levels; an already-passive diagonal state maps to itself.
    """
    if rho.dim != hamiltonian.dim:
        raise ValueError("state and Hamiltonian dimensions differ")
    descending = eigens(rho)
    order = np.argsort(hamiltonian.energies, kind="stable")
    out = np.zeros((rho.dim, rho.dim), dtype=np.complex128)
    out[order, order] = descending
    return DensityOperator(out)


@dataclass(frozen=True)
class Theorem2Result:
    """Outcome of the conditional ergotropy-vs-free-energy comparison."""

    condition_holds: bool
    lhs: float
    rhs: float


def theorem2_check(
    rho: DensityOperator,
    xi: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    bath: FactorizedEnsemble,
    temperature: float,
    cap: int = DEFAULT_EXPANSION_CAP,
) -> Theorem2Result:
    """Conditional bound relating joint ergotropy differences to system
    free-energy differences.

    Evaluates the hypothesis F(passive of xi x bath) <= F(passive of
    rho x bath); when it holds, lhs = R(rho x bath) - R(xi x bath) must not
    exceed rhs = F(rho) - F(xi). The passive joint states share the spectrum
    of their parents, so their free energies come straight from the joint
    (prob, energy) lists.
    """
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    rho_probs, energies = _joint_pairs(rho, hamiltonian, bath, cap)
    xi_probs, _ = _joint_pairs(xi, hamiltonian, bath, cap)

    rho_passive = _sorted_passive(rho_probs, energies)
    xi_passive = _sorted_passive(xi_probs, energies)
    free_rho_passive = rho_passive - temperature * shannon_entropy(rho_probs)
    free_xi_passive = xi_passive - temperature * shannon_entropy(xi_probs)
    condition = free_xi_passive <= free_rho_passive

    rho_ergotropy = _joint_average_energy(rho, hamiltonian, bath) - rho_passive
    xi_ergotropy = _joint_average_energy(xi, hamiltonian, bath) - xi_passive

    def marginal_free_energy(state: DensityOperator) -> float:
        energy = compensated_dot(state.diagonal(), hamiltonian.energies)
        return energy - temperature * shannon_entropy(eigens(state))

    return Theorem2Result(
        condition_holds=bool(condition),
        lhs=rho_ergotropy - xi_ergotropy,
        rhs=marginal_free_energy(rho) - marginal_free_energy(xi),
    )
