"""Seeded random states for property checks."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .inputs import InputAmplitudes
from .quantum import DensityOperator, PureState


def random_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unit vector in ``C^dim``."""
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def random_pure_state(rng: np.random.Generator, n_qubits: int, register: Sequence[str] | None = None) -> PureState:
    return PureState.from_amplitudes(random_unit_vector(rng, 2**n_qubits), register)


def random_density(
    rng: np.random.Generator,
    n_qubits: int,
    rank: int | None = None,
    register: Sequence[str] | None = None,
) -> DensityOperator:
    """Reduced state of a random pure state on ``n_qubits`` plus an ancilla of size ``rank``.

    With the default ``rank = 2**n_qubits`` this is the induced (Hilbert-Schmidt)
    measure on density operators.
    """
    d = 2**n_qubits
    k = d if rank is None else rank
    psi = random_unit_vector(rng, d * k).reshape(d, k)
    rho = psi @ psi.conj().T
    return DensityOperator.from_matrix(0.5 * (rho + rho.conj().T), register)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (z + z.conj().T)


def random_amplitudes(rng: np.random.Generator) -> InputAmplitudes:
    a, b = random_unit_vector(rng, 2)
    return InputAmplitudes(a, b)
