"""Seeded self-verification: fast path against the dense oracle, the two
work-extraction theorems, and the channel invariants, on random instances.

Each check runs `trials` independent trials. Trial randomness is derived
from (master seed, trial index), so a summary is a pure function of its
arguments.
"""

from __future__ import annotations

import numpy as np

from .bath import BathSpec, bath_ensemble, custom_bath, skrzypczyk_bath
from .bounds import free_energy_bound
from .config import ConfigError
from .ergotropy import ergotropy_product, theorem2_check
from .oracle import (
    MIXED_TRACE_NORMALIZED,
    PURE_HAAR,
    UNITARY_HAAR,
    RandomSpec,
    dense_ergotropy,
    dense_joint,
    passivizing_unitary,
    random_state,
    random_unitary,
    theorem1_work,
    trial_seed,
)
from .spectra import DiagonalHamiltonian, compensated_dot, eigens, shannon_entropy
from .weight import (
    EnergyEigenstateWeight,
    GaussianWeight,
    TimeStateWeight,
    control_marginal,
)

EQUIVALENCE_TOL = 1e-9
CHAIN_TOL = 1e-9
TIMESTATE_TOL = 1e-10
ENERGY_TOL = 1e-12
ENTROPY_TOL = 1e-10


def _params_rng(child_seed: int) -> np.random.Generator:
    key = np.array([child_seed, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _random_system(rng: np.random.Generator, child: int, max_dim: int = 4):
    dim = int(rng.integers(2, max_dim + 1))
    kind = PURE_HAAR if rng.integers(0, 2) == 0 else MIXED_TRACE_NORMALIZED
    rho = random_state(RandomSpec(seed=child, dim=dim, kind=kind))
    energies = np.sort(rng.uniform(0.0, 3.0, dim))
    energies[1:] += 1e-3 * np.arange(1, dim)  # keep levels non-degenerate
    return rho, DiagonalHamiltonian(energies)


def _random_bath(rng: np.random.Generator, temperature: float, max_qubits: int) -> BathSpec:
    n = int(rng.integers(1, max_qubits + 1))
    if rng.integers(0, 2) == 0:
        return skrzypczyk_bath(n, temperature, float(rng.uniform(0.3, 2.5)))
    return custom_bath(temperature, rng.uniform(0.2, 2.5, n))


def _random_weight(rng: np.random.Generator):
    pick = int(rng.integers(0, 3))
    if pick == 0:
        return GaussianWeight(sigma=float(np.exp(rng.uniform(np.log(0.1), np.log(10.0)))))
    if pick == 1:
        return TimeStateWeight(t=float(rng.uniform(-3.0, 3.0)))
    return EnergyEigenstateWeight()


def _check_fast_vs_dense(trials: int, seed: int, max_dim: int) -> dict:
    failures = 0
    worst = 0.0
    for i in range(trials):
        child = trial_seed(seed, i)
        rng = _params_rng(child)
        rho, hamiltonian = _random_system(rng, child)
        temperature = float(rng.uniform(0.3, 3.0))
        max_qubits = 1
        while rho.dim * 2 ** (max_qubits + 1) <= max_dim:
            max_qubits += 1
        bath = _random_bath(rng, temperature, max_qubits)
        try:
            fast = ergotropy_product(rho, hamiltonian, bath_ensemble(bath))
        except ArithmeticError:
            failures += 1
            continue
        joint = dense_joint(rho, hamiltonian, bath)
        dense = dense_ergotropy(joint.state, joint.hamiltonian)
        violation = abs(fast - dense)
        worst = max(worst, violation)
        if violation > EQUIVALENCE_TOL:
            failures += 1
    return {"name": "fast_vs_dense_ergotropy", "trials": trials, "failures": failures,
            "worst_violation": worst}


def _check_theorem1(trials: int, seed: int) -> dict:
    dims = (4, 6, 8)
    failures = 0
    worst = 0.0
    for i in range(trials):
        child = trial_seed(seed, 1_000_000 + i)
        rng = _params_rng(child)
        dim = dims[i % len(dims)]
        sigma = random_state(RandomSpec(seed=child, dim=dim, kind=MIXED_TRACE_NORMALIZED))
        hamiltonian = DiagonalHamiltonian(np.sort(rng.uniform(0.0, 3.0, dim)))
        initial = dense_ergotropy(sigma, hamiltonian)
        try:
            result = theorem1_work(
                random_unitary(RandomSpec(seed=child, dim=dim, kind=UNITARY_HAAR)),
                sigma,
                hamiltonian,
            )
            violation = max(
                abs(result.work - (initial - result.residual_ergotropy)),
                result.work - initial,
            )
            optimal = theorem1_work(passivizing_unitary(sigma, hamiltonian), sigma, hamiltonian)
            violation = max(
                violation, abs(optimal.work - initial), abs(optimal.residual_ergotropy)
            )
        except ArithmeticError:
            failures += 1
            continue
        worst = max(worst, violation)
        if violation > EQUIVALENCE_TOL:
            failures += 1
    return {"name": "theorem1_identity", "trials": trials, "failures": failures,
            "worst_violation": worst}


def _check_chain(trials: int, seed: int) -> dict:
    failures = 0
    worst = -np.inf
    for i in range(trials):
        child = trial_seed(seed, 2_000_000 + i)
        rng = _params_rng(child)
        rho, hamiltonian = _random_system(rng, child)
        temperature = float(rng.uniform(0.3, 3.0))
        bath = _random_bath(rng, temperature, 3)
        weight = _random_weight(rng)
        ensemble = bath_ensemble(bath)
        try:
            resource = ergotropy_product(rho, hamiltonian, ensemble)
            tight = ergotropy_product(
                control_marginal(rho, hamiltonian, weight), hamiltonian, ensemble
            )
        except ArithmeticError:
            failures += 1
            continue
        ceiling = free_energy_bound(rho, hamiltonian, temperature)
        violation = max(tight - resource, resource - ceiling, -(resource - tight))
        worst = max(worst, violation)
        if violation > CHAIN_TOL:
            failures += 1
    return {"name": "inequality_chain", "trials": trials, "failures": failures,
            "worst_violation": float(worst) if np.isfinite(worst) else 0.0}


def _check_theorem2(trials: int, seed: int) -> dict:
    failures = 0
    applicable = 0
    worst = -np.inf
    for i in range(trials):
        child = trial_seed(seed, 3_000_000 + i)
        rng = _params_rng(child)
        rho, hamiltonian = _random_system(rng, child, max_dim=3)
        xi = random_state(
            RandomSpec(seed=trial_seed(child, 1), dim=rho.dim, kind=MIXED_TRACE_NORMALIZED)
        )
        temperature = float(rng.uniform(0.3, 3.0))
        bath = _random_bath(rng, temperature, 2)
        try:
            result = theorem2_check(rho, xi, hamiltonian, bath_ensemble(bath), temperature)
        except ArithmeticError:
            failures += 1
            continue
        if not result.condition_holds:
            continue  # hypothesis violated: excluded, never asserted
        applicable += 1
        violation = result.lhs - result.rhs
        worst = max(worst, violation)
        if violation > CHAIN_TOL:
            failures += 1
    return {"name": "theorem2_conditional", "trials": trials, "failures": failures,
            "worst_violation": float(worst) if applicable and np.isfinite(worst) else 0.0,
            "applicable": applicable}


def _check_timestate(trials: int, seed: int) -> dict:
    failures = 0
    worst = 0.0
    for i in range(trials):
        child = trial_seed(seed, 4_000_000 + i)
        rng = _params_rng(child)
        rho, hamiltonian = _random_system(rng, child)
        temperature = float(rng.uniform(0.3, 3.0))
        bath = _random_bath(rng, temperature, 3)
        weight = TimeStateWeight(t=float(rng.uniform(-5.0, 5.0)))
        ensemble = bath_ensemble(bath)
        try:
            resource = ergotropy_product(rho, hamiltonian, ensemble)
            tight = ergotropy_product(
                control_marginal(rho, hamiltonian, weight), hamiltonian, ensemble
            )
        except ArithmeticError:
            failures += 1
            continue
        violation = abs(resource - tight)
        worst = max(worst, violation)
        if violation > TIMESTATE_TOL:
            failures += 1
    return {"name": "timestate_locked_zero", "trials": trials, "failures": failures,
            "worst_violation": worst}


def _check_dephasing(trials: int, seed: int) -> dict:
    failures = 0
    worst = 0.0
    for i in range(trials):
        child = trial_seed(seed, 5_000_000 + i)
        rng = _params_rng(child)
        rho, hamiltonian = _random_system(rng, child)
        sigma = control_marginal(rho, hamiltonian, EnergyEigenstateWeight())
        off = sigma.entries - np.diag(np.diagonal(sigma.entries))
        violation = float(np.max(np.abs(off)))
        worst = max(worst, violation)
        if violation != 0.0:  # dephasing must zero coherences exactly
            failures += 1
    return {"name": "energy_eigenstate_dephasing", "trials": trials, "failures": failures,
            "worst_violation": worst}


def _check_channel_invariants(trials: int, seed: int) -> dict:
    failures = 0
    worst = 0.0
    for i in range(trials):
        child = trial_seed(seed, 6_000_000 + i)
        rng = _params_rng(child)
        rho, hamiltonian = _random_system(rng, child)
        sigma = control_marginal(rho, hamiltonian, _random_weight(rng))
        energy_shift = abs(
            compensated_dot(sigma.diagonal(), hamiltonian.energies)
            - compensated_dot(rho.diagonal(), hamiltonian.energies)
        )
        entropy_drop = shannon_entropy(eigens(rho)) - shannon_entropy(eigens(sigma))
        violation = max(energy_shift, entropy_drop)
        worst = max(worst, violation)
        if energy_shift > ENERGY_TOL or entropy_drop > ENTROPY_TOL:
            failures += 1
    return {"name": "control_marginal_invariants", "trials": trials, "failures": failures,
            "worst_violation": worst}


def run_verification(trials: int, seed: int, max_dim: int = 64) -> dict:
    """Run every check with `trials` trials each; returns the summary dict."""
    if trials < 1:
        raise ConfigError("trials: empty verification is refused")
    if not 0 <= seed < 1 << 64:
        raise ConfigError("seed: must fit in 64 unsigned bits")
    if max_dim > 64:
        raise ConfigError("max_dim: dense comparisons are limited to 64")
    if max_dim < 8:
        raise ConfigError("max_dim: must be at least 8")
    checks = [
        _check_fast_vs_dense(trials, seed, max_dim),
        _check_theorem1(trials, seed),
        _check_chain(trials, seed),
        _check_theorem2(trials, seed),
        _check_timestate(trials, seed),
        _check_dephasing(trials, seed),
        _check_channel_invariants(trials, seed),
    ]
    return {"checks": checks, "pass": all(c["failures"] == 0 for c in checks)}
