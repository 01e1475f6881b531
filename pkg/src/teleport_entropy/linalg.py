"""Dense complex-matrix kernel.

Everything here works on small square ``numpy`` arrays (dimension at most 16).
The Hermitian eigensolver is a cyclic Jacobi method using round-robin pair
ordering, so each round rotates up to ``n/2`` disjoint index pairs with a
single unitary product.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, DimensionOverflow, NotHermitian

MAX_DIM = 16
HERMITIAN_TOL = 1e-9
OFF_DIAGONAL_TOL = 1e-12
MAX_SWEEPS = 100
CLAMP_TOL = 1e-10


class EigenDecomposition(NamedTuple):
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square complex array, checking the size limit."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise DimensionOverflow(f"dimension {a.shape[0]} exceeds {MAX_DIM}")
    return a


def hermiticity_error(m) -> float:
    a = np.asarray(m)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Partition all index pairs of ``range(n)`` into rounds of disjoint pairs."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            i, j = players[k], players[m - 1 - k]
            if i >= 0 and j >= 0:
                pairs.append((min(i, j), max(i, j)))
        rounds.append(tuple(pairs))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


@lru_cache(maxsize=None)
def _schedule(n: int, blocks: tuple[tuple[int, ...], ...]) -> tuple[tuple[np.ndarray, ...], ...]:
    """Rotation rounds that only pair indices within the same block.

    Round ``i`` of every block is merged into one global round, so decoupled
    blocks are swept simultaneously. Each round is ``(p, q, flat)`` where
    ``flat`` holds the flat offsets of the (p,p), (p,q), (q,p), (q,q) entries
    of an ``n x n`` matrix.
    """
    per_block = [
        [tuple((block[i], block[j]) for i, j in pairs) for pairs in _round_robin(len(block))]
        for block in blocks
        if len(block) > 1
    ]
    out = []
    for merged in itertools.zip_longest(*per_block, fillvalue=()):
        pairs = [pair for part in merged for pair in part]
        p, q = (np.array(x) for x in zip(*pairs))
        flat = np.concatenate([p * n + p, p * n + q, q * n + p, q * n + q])
        out.append((p, q, flat))
    return tuple(out)


def _blocks(a: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Index sets of the connected components of the nonzero pattern of ``a``."""
    n = a.shape[0]
    reach = ((a != 0) | np.eye(n, dtype=bool)).astype(np.int64)
    for _ in range(max(1, (n - 1).bit_length())):
        reach = np.minimum(reach @ reach, 1)
    # label each index by the smallest index it can reach
    labels = np.argmax(reach, axis=1)
    return tuple(tuple(int(i) for i in np.flatnonzero(labels == k)) for k in np.unique(labels))


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return float(np.sqrt(np.sum(off.real**2 + off.imag**2)))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    v = eye
    tol = OFF_DIAGONAL_TOL * max(1.0, float(np.linalg.norm(a)))
    # decoupled blocks (e.g. after a measurement) never need cross-block rotations
    rounds = _schedule(n, _blocks(a))
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) < tol:
            break
        for p, q, flat in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            if mag.max() == 0.0:
                continue
            d = a.diagonal().real
            h = 0.5 * (d[q] - d[p])
            # tangent of the rotation angle, the smaller root for stability
            t = np.copysign(mag, h) / (np.abs(h) + np.hypot(h, mag) + 1e-300)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ph = np.exp(-1j * np.angle(apq))
            u = eye.copy()
            np.put(u, flat, np.concatenate([c, s, -s * ph, c * ph]))
            a = u.conj().T @ a @ u
            v = v @ u
        a = 0.5 * (a + a.conj().T)
    return np.diagonal(a).real.copy(), v


def _fix_phase(v: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(v), axis=0)
    lead = v[idx, np.arange(v.shape[1])]
    return v * (np.abs(lead) / lead)


def hermitian_eig(m) -> EigenDecomposition:
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi rotations.

    Eigenvalues come back sorted in descending order (ties keep their
    diagonal order). Each eigenvector is rephased so that its
    largest-magnitude component is real and positive.

    Raises:
        NotHermitian: if any entry of ``m - m^H`` exceeds 1e-9 in magnitude.
    """
    a = as_matrix(m)
    if hermiticity_error(a) > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian (max |m - m^H| = {hermiticity_error(a):.3g})")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    if _off_norm(a) == 0.0:
        w = np.diagonal(a).real.copy()
        v = np.eye(n, dtype=complex)
    else:
        w, v = _jacobi(a)
        v = _fix_phase(v)
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(_frozen(w[order]), _frozen(v[:, order].copy()))


def clamp_eigenvalues(w: np.ndarray) -> np.ndarray:
    """Zero out tiny negative eigenvalues left over from roundoff."""
    w = np.array(w, dtype=float)
    w[(w < 0) & (w >= -CLAMP_TOL)] = 0.0
    return w


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b`` with the register size limit enforced."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[0] * b.shape[0] > MAX_DIM:
        raise DimensionOverflow(f"kron result dimension {a.shape[0] * b.shape[0]} exceeds {MAX_DIM}")
    da, db = a.shape[0], b.shape[0]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(da * db, da * db)


def kron_all(*mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = kron(out, m)
    return out


def frobenius_distance(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))
