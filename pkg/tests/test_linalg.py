import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nulljam.linalg import cholesky_factor, hermitian_eigendecomp, null_space_basis

from conftest import random_psd, random_unitary


def test_null_space_axis_aligned():
    e = null_space_basis([1, 0, 0])
    assert e.shape == (3, 2)
    assert np.allclose(np.abs(e[0]), 0, atol=1e-15)
    assert np.allclose(e.conj().T @ e, np.eye(2), atol=1e-12)


def test_null_space_two_dims():
    h = np.array([0, 1])
    e = null_space_basis(h)
    assert e.shape == (2, 1)
    assert abs((e.conj().T @ e)[0, 0] - 1) < 1e-12
    assert abs((e.conj().T @ h)[0]) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2 ** 32 - 1))
def test_null_space_invariants(n, seed):
    g = np.random.default_rng(seed)
    h = (g.standard_normal(n) + 1j * g.standard_normal(n)) * g.uniform(1e-3, 1e3)
    e = null_space_basis(h)
    assert e.shape == (n, n - 1)
    assert np.max(np.abs(e.conj().T @ h)) <= 1e-12 * np.linalg.norm(h)
    assert np.linalg.norm(e.conj().T @ e - np.eye(n - 1)) <= 1e-12


def test_null_space_deterministic(rng):
    h = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    assert np.array_equal(null_space_basis(h), null_space_basis(h.copy()))


@pytest.mark.parametrize("h", [[1.0], [], [0, 0, 0]])
def test_null_space_errors(h):
    with pytest.raises(ValueError):
        null_space_basis(h)


def test_null_space_basis_choice_keeps_spectrum(rng):
    # two valid bases differ by a unitary, so E^H S E keeps its eigenvalues
    for _ in range(20):
        n = int(rng.integers(2, 7))
        h = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        e = null_space_basis(h)
        e2 = e @ random_unitary(rng, n - 1)
        s = random_psd(rng, n) - random_psd(rng, n)
        w1 = np.linalg.eigvalsh(e.conj().T @ s @ e)
        w2 = np.linalg.eigvalsh(e2.conj().T @ s @ e2)
        assert np.allclose(w1, w2, atol=1e-9)


def test_eig_identity():
    w, _ = hermitian_eigendecomp(np.eye(2))
    assert np.allclose(w, [1, 1])


def test_eig_diagonal():
    w, u = hermitian_eigendecomp(np.diag([-1.0, 3.0]))
    assert np.allclose(w, [3, -1])
    assert np.allclose(np.abs(u), [[0, 1], [1, 0]])


def test_eig_invariants(rng):
    for n in range(1, 9):
        a = random_psd(rng, n) - 2 * random_psd(rng, n)
        w, u = hermitian_eigendecomp(a)
        assert np.all(np.diff(w) <= 0)
        scale = max(1.0, np.linalg.norm(a))
        assert np.linalg.norm(a - u @ np.diag(w) @ u.conj().T) <= 1e-10 * scale
        assert np.linalg.norm(u.conj().T @ u - np.eye(n)) <= 1e-10


def test_eig_projected_psd_nonnegative(rng):
    for _ in range(20):
        s = random_psd(rng, 4, rank=2)
        e = null_space_basis(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        w, _ = hermitian_eigendecomp(e.conj().T @ s @ e)
        assert w.min() >= -1e-12 * np.linalg.norm(s)


def test_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigendecomp(np.array([[1, 2], [0, 1]]))


def test_cholesky_identity_and_scalar():
    assert np.allclose(cholesky_factor(np.eye(3)), np.eye(3))
    assert np.allclose(cholesky_factor(4 * np.eye(2)), 2 * np.eye(2))


def test_cholesky_reconstructs():
    s = np.array([[2, 1], [1, 2]], dtype=complex)
    low = cholesky_factor(s)
    assert np.allclose(np.triu(low, 1), 0)
    assert np.linalg.norm(low @ low.conj().T - s) <= 1e-10 * max(1, np.linalg.norm(s))


def test_cholesky_rank_deficient(rng):
    for n in range(2, 6):
        s = random_psd(rng, n, rank=1)
        low = cholesky_factor(s)
        assert np.allclose(np.triu(low, 1), 0, atol=1e-12)
        assert np.linalg.norm(low @ low.conj().T - s) <= 1e-10 * max(1, np.linalg.norm(s))
    assert np.allclose(cholesky_factor(np.zeros((3, 3))), 0)


def test_cholesky_rejects_indefinite():
    with pytest.raises(ValueError, match="not PSD"):
        cholesky_factor(np.diag([1.0, -0.5]))
