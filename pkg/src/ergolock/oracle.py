"""Dense brute-force reference implementations and seeded random instances.

Everything here works on explicit matrices and full eigendecompositions so
it can cross-check the factorized fast path at small dimension. Randomness
uses the counter-based Philox4x64 bit generator: identical seeds give
bit-identical output on every platform, and per-trial streams are keyed by
(master seed, trial index).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bath import BathSpec, bath_ensemble
from .spectra import (
    DensityOperator,
    DiagonalHamiltonian,
    SizeCapError,
    compensated_dot,
    expand,
)

DENSE_DIM_CAP = 4096

PURE_HAAR = "pure-haar"
MIXED_TRACE_NORMALIZED = "mixed-trace-normalized"
UNITARY_HAAR = "unitary-haar"

_KIND_TAGS = {PURE_HAAR: 1, MIXED_TRACE_NORMALIZED: 2, UNITARY_HAAR: 3}


@dataclass(frozen=True)
class RandomSpec:
    """Deterministic recipe for one random instance."""

    seed: int
    dim: int
    kind: str

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.kind not in _KIND_TAGS:
            raise ValueError(f"unknown kind {self.kind!r}")


def _rng(spec: RandomSpec) -> np.random.Generator:
    key = np.array([spec.seed, _KIND_TAGS[spec.kind]], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def trial_seed(master_seed: int, trial: int) -> int:
    """Child seed for one trial, derived from (master seed, trial index)."""
    key = np.array([master_seed, trial], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    return int(gen.integers(0, 1 << 63, dtype=np.uint64))


def random_state(spec: RandomSpec) -> DensityOperator:
    """Haar-random pure state or Ginibre-style mixed state, seed-reproducible."""
    rng = _rng(spec)
    if spec.kind == PURE_HAAR:
        vec = rng.standard_normal(spec.dim) + 1j * rng.standard_normal(spec.dim)
        vec /= np.linalg.norm(vec)
        mat = np.outer(vec, vec.conj())
    elif spec.kind == MIXED_TRACE_NORMALIZED:
        g = rng.standard_normal((spec.dim, spec.dim)) + 1j * rng.standard_normal(
            (spec.dim, spec.dim)
        )
        mat = g @ g.conj().T
        mat /= np.real(np.trace(mat))
    else:
        raise ValueError(f"random_state does not produce kind {spec.kind!r}")
    return DensityOperator(0.5 * (mat + mat.conj().T))


def random_unitary(spec: RandomSpec) -> np.ndarray:
    """Haar-random unitary: QR of a complex Gaussian with the R diagonal
    phase-fixed, which makes the distribution exactly Haar."""
    if spec.kind != UNITARY_HAAR:
        raise ValueError(f"random_unitary needs kind {UNITARY_HAAR!r}")
    rng = _rng(spec)
    g = rng.standard_normal((spec.dim, spec.dim)) + 1j * rng.standard_normal(
        (spec.dim, spec.dim)
    )
    q, r = np.linalg.qr(g)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


@dataclass(frozen=True)
class DenseJoint:
    state: DensityOperator
    hamiltonian: DiagonalHamiltonian


def dense_joint(
    rho: DensityOperator, hamiltonian: DiagonalHamiltonian, bath: BathSpec
) -> DenseJoint:
    """Materialize (system x bath Gibbs) literally as a dense matrix.

    Basis order is the Kronecker convention (system index slowest), matching
    the lexicographic order of the factorized expansion.
    """
    if rho.dim != hamiltonian.dim:
        raise ValueError("state and Hamiltonian dimensions differ")
    bath_spectrum = expand(bath_ensemble(bath))
    joint_dim = rho.dim * bath_spectrum.size
    if joint_dim > DENSE_DIM_CAP:
        raise SizeCapError(joint_dim, DENSE_DIM_CAP)
    state = np.kron(rho.entries, np.diag(bath_spectrum.probs))
    energies = np.add.outer(hamiltonian.energies, bath_spectrum.energies).ravel()
    return DenseJoint(DensityOperator(state), DiagonalHamiltonian(energies))


def dense_ergotropy(state: DensityOperator, hamiltonian: DiagonalHamiltonian) -> float:
    """Ergotropy by full eigendecomposition plus the sorted pairing."""
    if state.dim != hamiltonian.dim:
        raise ValueError("state and Hamiltonian dimensions differ")
    if state.dim > DENSE_DIM_CAP:
        raise SizeCapError(state.dim, DENSE_DIM_CAP)
    mean_energy = compensated_dot(state.diagonal(), hamiltonian.energies)
    descending = np.linalg.eigvalsh(state.entries)[::-1]
    passive = compensated_dot(descending, np.sort(hamiltonian.energies))
    return mean_energy - passive


def passivizing_unitary(
    state: DensityOperator, hamiltonian: DiagonalHamiltonian
) -> np.ndarray:
    """Unitary that maps the state onto its passive state (zero ergotropy)."""
    eigenvalues, eigenvectors = np.linalg.eigh(state.entries)
    # eigh returns ascending; reverse to pair largest populations first.
    eigenvectors = eigenvectors[:, ::-1]
    target = np.argsort(hamiltonian.energies, kind="stable")
    unitary = np.zeros_like(eigenvectors)
    unitary[target, :] = eigenvectors.conj().T[np.arange(state.dim), :]
    return unitary


@dataclass(frozen=True)
class Theorem1Result:
    work: float
    residual_ergotropy: float


def theorem1_work(
    unitary: np.ndarray, sigma_sb: DensityOperator, hamiltonian: DiagonalHamiltonian
) -> Theorem1Result:
    """Work done by one unitary stroke and the ergotropy left behind.

    work = Tr[H (sigma - U sigma U+)]. Since a unitary preserves the
    spectrum, work must equal the ergotropy drop R(sigma) - R(U sigma U+);
    that identity is verified to 1e-9 before returning.
    """
    unitary = np.asarray(unitary, dtype=np.complex128)
    if unitary.shape != (sigma_sb.dim, sigma_sb.dim):
        raise ValueError("unitary dimension does not match the state")
    defect = float(
        np.max(np.abs(unitary.conj().T @ unitary - np.eye(sigma_sb.dim)))
    )
    if defect > 1e-10:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
    rotated = unitary @ sigma_sb.entries @ unitary.conj().T
    rotated = DensityOperator(0.5 * (rotated + rotated.conj().T))
    work = compensated_dot(
        sigma_sb.diagonal() - rotated.diagonal(), hamiltonian.energies
    )
    residual = dense_ergotropy(rotated, hamiltonian)
    drop = dense_ergotropy(sigma_sb, hamiltonian) - residual
    if abs(work - drop) > 1e-9:
        raise ArithmeticError(
            f"work {work!r} disagrees with the ergotropy drop {drop!r}"
        )
    return Theorem1Result(work=work, residual_ergotropy=residual)
