"""Dense Hermitian eigensolver and matrix exponential."""

import math

import numpy as np
import scipy.sparse as sp

from . import kernels
from .errors import AccuracyError, InvalidArgument

HERMITIAN_TOL = 1e-10

# Higham (2005) degree-13 Pade coefficients and its scaling threshold
_PADE13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)
_THETA13 = 5.371920351148152


def _dense(m):
    if sp.issparse(m):
        m = m.toarray()
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {m.shape}")
    return m


def _checked_hermitian(m):
    m = _dense(m)
    if m.size:
        asym = float(np.max(np.abs(m - m.conj().T)))
        if asym > HERMITIAN_TOL:
            raise InvalidArgument(f"matrix is not Hermitian (max |M - M^H| = {asym:.3e})")
    return m


def hermitian_eigenvalues(m):
    """Ascending eigenvalues of a Hermitian matrix (Householder + QL)."""
    m = _checked_hermitian(m)
    if m.shape[0] == 0:
        return np.zeros(0)
    d, e, _ = kernels.tridiagonalize(m)
    w, _ = kernels.tridiagonal_eigen(d, e)
    return w


def hermitian_eigh(m):
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""
    m = _checked_hermitian(m)
    if m.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), complex)
    d, e, u = kernels.tridiagonalize(m, want_q=True)
    w, z = kernels.tridiagonal_eigen(d, e, want_vectors=True)
    return w, u @ z


def eigen_residuals(m, w, v):
    """``max_k ||M v_k - w_k v_k||`` relative to ``||M||_2`` bound (Frobenius)."""
    m = _dense(m)
    r = m @ v - v * w[np.newaxis, :]
    scale = max(np.linalg.norm(m), np.finfo(float).tiny)
    return float(np.max(np.linalg.norm(r, axis=0)) / scale) if w.size else 0.0


def matrix_exponential(m):
    """``exp(M)`` by scaling and squaring around a degree-13 Pade approximant."""
    a = _dense(m).astype(np.complex128)
    n = a.shape[0]
    if not np.all(np.isfinite(a)):
        raise InvalidArgument("matrix has non-finite entries")
    if n == 0:
        return a.copy()
    norm1 = float(np.max(np.sum(np.abs(a), axis=0)))
    s = max(0, int(math.ceil(math.log2(norm1 / _THETA13)))) if norm1 > _THETA13 else 0
    a = a / (2.0 ** s)
    b = _PADE13
    ident = np.eye(n, dtype=np.complex128)
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a4 @ a2
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
    r = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        r = r @ r
    if not np.all(np.isfinite(r)):
        raise AccuracyError("matrix exponential overflowed", estimate=norm1)
    return r
