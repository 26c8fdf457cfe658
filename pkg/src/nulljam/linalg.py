"""Small dense complex linear algebra.

Everything here works on numpy arrays of dimension at most ~16. Outputs are
deterministic: the same input always yields bit-identical results.
"""
from typing import NamedTuple

import numpy as np

__all__ = ["HermitianEigen", "null_space_basis", "hermitian_eigendecomp",
           "cholesky_factor", "is_hermitian"]


class HermitianEigen(NamedTuple):
    """Eigenvalues (descending) and unitary eigenvector matrix (columns)."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _scale(a):
    return max(1.0, float(np.linalg.norm(a)))


def is_hermitian(a, rtol=1e-10):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return float(np.linalg.norm(a - a.conj().T)) <= rtol * _scale(a)


def null_space_basis(h):
    """Orthonormal basis of the orthogonal complement of ``h``.

    ``h / ||h||`` is completed to a unitary matrix with a complex Householder
    reflection and the first column is dropped, so the returned matrix ``E``
    (n x (n-1)) satisfies ``E^H h = 0`` and ``E^H E = I``.

    Parameters
    ----------
    h : array_like, complex, shape (n,)
        Channel vector, ``n >= 2``.

    Returns
    -------
    E : ndarray, complex, shape (n, n - 1)

    Raises
    ------
    ValueError
        If ``n < 2`` or ``h`` is the zero vector.
    """
    h = np.asarray(h, dtype=complex).ravel()
    n = h.size
    if n < 2:
        raise ValueError("no null space degrees of freedom (dimension < 2)")
    norm = np.linalg.norm(h)
    if not np.isfinite(norm):
        raise ValueError("channel vector has non-finite entries")
    if norm == 0:
        raise ValueError("cannot build a null space for the zero vector")
    u = h / norm
    # reflection maps u -> alpha*e1; the sign choice avoids cancellation in v
    alpha = -np.exp(1j * np.angle(u[0]))
    v = u.copy()
    v[0] -= alpha
    householder = np.eye(n, dtype=complex) - 2.0 * np.outer(v, v.conj()) / np.vdot(v, v).real
    return householder[:, 1:]


def hermitian_eigendecomp(a):
    """Eigendecomposition ``A = U diag(w) U^H`` with ``w`` sorted descending.

    Ties keep the order LAPACK returned them in (stable sort).
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not is_hermitian(a):
        raise ValueError("matrix is not Hermitian within tolerance")
    herm = 0.5 * (a + a.conj().T)
    w, u = np.linalg.eigh(herm)
    order = np.argsort(-w, kind="stable")
    return HermitianEigen(w[order], u[:, order])


def cholesky_factor(cov):
    """Lower-triangular ``L`` with ``L L^H = cov`` for Hermitian PSD ``cov``.

    Singular (rank-deficient) covariances are handled through the
    eigendecomposition: eigenvalues down to ``-1e-8 * ||cov||_F`` are clamped
    to zero, anything more negative is rejected.
    """
    cov = np.asarray(cov, dtype=complex)
    if not is_hermitian(cov):
        raise ValueError("covariance is not Hermitian")
    herm = 0.5 * (cov + cov.conj().T)
    try:
        return np.linalg.cholesky(herm)
    except np.linalg.LinAlgError:
        pass
    w, u = hermitian_eigendecomp(herm)
    if w.size and w[-1] < -1e-8 * float(np.linalg.norm(herm)):
        raise ValueError("covariance not PSD")
    b = u * np.sqrt(np.clip(w, 0.0, None))
    # B B^H = R^H R where B^H = Q R, so L = R^H is lower triangular
    _, r = np.linalg.qr(b.conj().T)
    return r.conj().T
