import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from teleport_entropy import linalg
from teleport_entropy.errors import DimensionMismatch, DimensionOverflow, NotHermitian
from teleport_entropy.sampling import random_hermitian


def _check_decomposition(m, tol=1e-9):
    e = linalg.hermitian_eig(m)
    n = m.shape[0]
    # numpy's LAPACK solver is only used here, as an independent oracle
    np.testing.assert_allclose(e.eigenvalues, np.sort(np.linalg.eigvalsh(m))[::-1], atol=tol)
    np.testing.assert_allclose(e.reconstruct(), m, atol=tol)
    np.testing.assert_allclose(e.eigenvectors.conj().T @ e.eigenvectors, np.eye(n), atol=tol)
    return e


@given(st.integers(1, 16), st.integers(0, 2**32 - 1))
def test_eig_matches_lapack_on_random_hermitian(n, seed):
    _check_decomposition(random_hermitian(np.random.default_rng(seed), n))


def test_eig_sorted_descending_with_phase_convention(rng):
    e = _check_decomposition(random_hermitian(rng, 6))
    assert np.all(np.diff(e.eigenvalues) <= 0)
    lead = e.eigenvectors[np.argmax(np.abs(e.eigenvectors), axis=0), np.arange(6)]
    np.testing.assert_allclose(lead.imag, 0.0, atol=1e-12)
    assert np.all(lead.real > 0)


def test_diagonal_input_is_exact():
    d = np.diag([0.1, 0.7, 0.2, 0.0])
    e = linalg.hermitian_eig(d)
    assert e.eigenvalues.tolist() == [0.7, 0.2, 0.1, 0.0]
    assert np.array_equal(np.abs(e.eigenvectors), np.eye(4)[:, [1, 2, 0, 3]])


def test_degenerate_spectrum():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    proj = np.outer(bell, bell)
    e = _check_decomposition(proj)
    np.testing.assert_allclose(e.eigenvalues, [1, 0, 0, 0], atol=1e-12)
    _check_decomposition(np.full((4, 4), 0.25))


def test_block_diagonal_input(rng):
    m = np.zeros((8, 8), dtype=complex)
    for idx in ([0, 3, 5], [1, 6], [2, 4, 7]):
        m[np.ix_(idx, idx)] = random_hermitian(rng, len(idx))
    _check_decomposition(m)


def test_eigenvectors_are_readonly(rng):
    e = linalg.hermitian_eig(random_hermitian(rng, 3))
    with pytest.raises(ValueError):
        e.eigenvalues[0] = 1.0


def test_eig_rejects_bad_input():
    with pytest.raises(NotHermitian):
        linalg.hermitian_eig([[0, 1], [0, 0]])
    with pytest.raises(DimensionMismatch):
        linalg.hermitian_eig(np.zeros((2, 3)))
    with pytest.raises(DimensionOverflow):
        linalg.hermitian_eig(np.eye(17))


def test_clamp_eigenvalues():
    out = linalg.clamp_eigenvalues([0.5, -1e-12, -1e-3, 0.0])
    assert out.tolist() == [0.5, 0.0, -1e-3, 0.0]


@given(st.integers(0, 2**32 - 1))
def test_kron_matches_numpy(seed):
    r = np.random.default_rng(seed)
    a, b = random_hermitian(r, 2), random_hermitian(r, 4)
    np.testing.assert_array_equal(linalg.kron(a, b), np.kron(a, b))


def test_kron_all_and_overflow():
    x = np.array([[0, 1], [1, 0]])
    np.testing.assert_array_equal(linalg.kron_all(x, np.eye(2), x), np.kron(np.kron(x, np.eye(2)), x))
    with pytest.raises(DimensionOverflow):
        linalg.kron(np.eye(4), np.eye(8))


def test_frobenius_distance():
    assert linalg.frobenius_distance(np.eye(2), np.zeros((2, 2))) == pytest.approx(np.sqrt(2))
    with pytest.raises(DimensionMismatch):
        linalg.frobenius_distance(np.eye(2), np.eye(4))
