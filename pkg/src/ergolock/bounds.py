"""Work-extraction bounds: tight bound, locked energy, and the free-energy
ceiling, plus the infinite-bath limit of the locked energy."""

from __future__ import annotations

from dataclasses import dataclass

from .bath import BathSpec, bath_ensemble
from .ergotropy import ergotropy_product
from .spectra import (
    DEFAULT_EXPANSION_CAP,
    DensityOperator,
    DiagonalHamiltonian,
    compensated_dot,
    eigens,
    free_energy,
    gibbs_ensemble,
    shannon_entropy,
)
from .weight import WeightModel, control_marginal

LOCKED_FLOOR = -1e-10
CHAIN_SLACK = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """All headline quantities for one (state, weight, bath) point.

    Construction enforces the chain 0 <= tight <= resource <= free-energy
    bound (within numerical slack) and the identity
    locked = resource - tight, so an instance is internally consistent.
    """

    tight_bound: float
    resource_ergotropy: float
    locked_energy: float
    free_energy_bound: float
    thermo_limit_locked: float

    def __post_init__(self):
        if abs(self.locked_energy - (self.resource_ergotropy - self.tight_bound)) > 1e-10:
            raise ValueError("locked energy is inconsistent with resource - tight")
        if self.locked_energy < LOCKED_FLOOR:
            raise ValueError(f"locked energy {self.locked_energy:.3e} is negative")
        if self.tight_bound > self.resource_ergotropy + 1e-10:
            raise ValueError("tight bound exceeds the resource ergotropy")
        if self.resource_ergotropy > self.free_energy_bound + CHAIN_SLACK:
            raise ValueError("resource ergotropy exceeds the free-energy bound")

    def as_dict(self) -> dict[str, float]:
        return {
            "tight_bound": self.tight_bound,
            "resource_ergotropy": self.resource_ergotropy,
            "locked_energy": self.locked_energy,
            "free_energy_bound": self.free_energy_bound,
            "thermo_limit_locked": self.thermo_limit_locked,
        }


def _marginal_free_energy(
    rho: DensityOperator, hamiltonian: DiagonalHamiltonian, temperature: float
) -> float:
    energy = compensated_dot(rho.diagonal(), hamiltonian.energies)
    return energy - temperature * shannon_entropy(eigens(rho))


def free_energy_bound(
    rho: DensityOperator, hamiltonian: DiagonalHamiltonian, temperature: float
) -> float:
    """F(rho) - F(thermal state): the bath-independent work ceiling."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    thermal = gibbs_ensemble(hamiltonian, 1.0 / temperature)
    return _marginal_free_energy(rho, hamiltonian, temperature) - free_energy(thermal, temperature)


def tight_bound(
    rho: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    weight: WeightModel,
    bath: BathSpec,
    cap: int = DEFAULT_EXPANSION_CAP,
) -> float:
    """Optimal extractable work: joint ergotropy of the weight-averaged
    system state with the bath. Weight-independent for diagonal states."""
    sigma = control_marginal(rho, hamiltonian, weight)
    return ergotropy_product(sigma, hamiltonian, bath_ensemble(bath), cap)


def locked_energy(
    rho: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    weight: WeightModel,
    bath: BathSpec,
    cap: int = DEFAULT_EXPANSION_CAP,
) -> float:
    """Coherence energy this weight cannot extract: resource minus tight."""
    ensemble = bath_ensemble(bath)
    resource = ergotropy_product(rho, hamiltonian, ensemble, cap)
    sigma = control_marginal(rho, hamiltonian, weight)
    return resource - ergotropy_product(sigma, hamiltonian, ensemble, cap)


def thermo_limit_locked(
    rho: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    weight: WeightModel,
    temperature: float,
) -> float:
    """Infinite-bath limit of the locked energy: T * [S(sigma) - S(rho)].

    Oriented so the value is non-negative (the weight average never lowers
    entropy) and equals F(rho) - F(sigma) given that the channel preserves
    energy. Some write-ups print the entropy difference in the reversed
    order; this implementation keeps the sign consistent with locked energy
    being non-negative.
    """
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    sigma = control_marginal(rho, hamiltonian, weight)
    return temperature * (shannon_entropy(eigens(sigma)) - shannon_entropy(eigens(rho)))


def bound_report(
    rho: DensityOperator,
    hamiltonian: DiagonalHamiltonian,
    weight: WeightModel,
    bath: BathSpec,
    cap: int = DEFAULT_EXPANSION_CAP,
) -> BoundReport:
    """Evaluate the full bound chain at one parameter point.

    The weight-averaged state and the bath ensemble are computed once and
    shared by every derived field, so the report is consistent under
    floating-point noise by construction.
    """
    sigma = control_marginal(rho, hamiltonian, weight)
    ensemble = bath_ensemble(bath)
    resource = ergotropy_product(rho, hamiltonian, ensemble, cap)
    tight = ergotropy_product(sigma, hamiltonian, ensemble, cap)
    thermo = bath.T * (shannon_entropy(eigens(sigma)) - shannon_entropy(eigens(rho)))
    return BoundReport(
        tight_bound=tight,
        resource_ergotropy=resource,
        locked_energy=resource - tight,
        free_energy_bound=free_energy_bound(rho, hamiltonian, bath.T),
        thermo_limit_locked=thermo,
    )
