"""Hot numerical kernels.

Each kernel has a numba implementation (explicit loops) and a numpy path.
``tc3._jit`` decides which one the public wrappers dispatch to.

* Hermitian -> real symmetric tridiagonal reduction (Householder).
* Symmetric tridiagonal eigenvalues: implicit-shift QL under numba, vectorized
  Sturm bisection under numpy. Eigenvectors always go through QL.
* SU(1,1) number-coherent-state amplitude sums.
"""

import math

import numpy as np
from scipy.special import gammaln

from ._jit import NUMBA_ENABLED, njit
from .errors import AccuracyError

_EPS = np.finfo(float).eps


# --------------------------------------------------------------------------
# Householder reduction


def _tridiag_numpy(a, want_q):
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    q = np.eye(n, dtype=np.complex128) if want_q else np.zeros((0, 0), np.complex128)
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        xnorm = math.hypot(abs(x[0]), tail)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        alpha = -phase * xnorm
        v = x
        v[0] -= alpha
        v /= np.linalg.norm(v)
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        kappa = np.vdot(v, p).real
        w = p - kappa * v
        sub -= 2.0 * (np.outer(v, w.conj()) + np.outer(w, v.conj()))
        a[k + 1:, k] = 0.0
        a[k, k + 1:] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = np.conj(alpha)
        if want_q:
            blk = q[:, k + 1:]
            blk -= 2.0 * np.outer(blk @ v, v.conj())
    d = a.diagonal().real.copy()
    e = a.diagonal(-1).copy()
    return d, e, q


def _tridiag_loops(a, want_q):
    a = a.copy()
    n = a.shape[0]
    if want_q:
        q = np.eye(n, dtype=np.complex128)
    else:
        q = np.zeros((0, 0), np.complex128)
    v = np.zeros(n, np.complex128)
    p = np.zeros(n, np.complex128)
    for k in range(n - 2):
        m = n - k - 1
        tail = 0.0
        for i in range(k + 2, n):
            tail += a[i, k].real ** 2 + a[i, k].imag ** 2
        if tail == 0.0:
            continue
        x0 = a[k + 1, k]
        ax0 = abs(x0)
        xnorm = math.sqrt(ax0 * ax0 + tail)
        if ax0 != 0.0:
            phase = x0 / ax0
        else:
            phase = 1.0 + 0.0j
        alpha = -phase * xnorm
        vn = 0.0
        for i in range(m):
            v[i] = a[k + 1 + i, k]
        v[0] -= alpha
        for i in range(m):
            vn += v[i].real ** 2 + v[i].imag ** 2
        vn = math.sqrt(vn)
        for i in range(m):
            v[i] /= vn
        kappa = 0.0
        for i in range(m):
            s = 0.0j
            for j in range(m):
                s += a[k + 1 + i, k + 1 + j] * v[j]
            p[i] = s
        for i in range(m):
            kappa += (v[i].conjugate() * p[i]).real
        for i in range(m):
            p[i] -= kappa * v[i]
        for i in range(m):
            for j in range(m):
                a[k + 1 + i, k + 1 + j] -= 2.0 * (
                    v[i] * p[j].conjugate() + p[i] * v[j].conjugate()
                )
        for i in range(k + 1, n):
            a[i, k] = 0.0
            a[k, i] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha.conjugate()
        if want_q:
            for r in range(n):
                s = 0.0j
                for j in range(m):
                    s += q[r, k + 1 + j] * v[j]
                for j in range(m):
                    q[r, k + 1 + j] -= 2.0 * s * v[j].conjugate()
    d = np.zeros(n)
    e = np.zeros(max(n - 1, 0), np.complex128)
    for i in range(n):
        d[i] = a[i, i].real
    for i in range(n - 1):
        e[i] = a[i + 1, i]
    return d, e, q


_tridiag_nb = njit(_tridiag_loops)


def tridiagonalize(a, want_q=False):
    """Reduce a Hermitian matrix to a real symmetric tridiagonal one.

    Returns ``(d, e, u)`` with diagonal ``d``, nonnegative off-diagonal ``e``
    and, if ``want_q``, the unitary ``u`` such that ``u^H a u`` is that
    tridiagonal matrix.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    n = a.shape[0]
    if NUMBA_ENABLED:
        d, ec, q = _tridiag_nb(a, want_q)
    else:
        d, ec, q = _tridiag_numpy(a, want_q)
    mag = np.abs(ec)
    if not want_q:
        return d, mag, None
    # diagonal phase similarity making the off-diagonal real and >= 0
    phases = np.ones(n, dtype=np.complex128)
    for k in range(n - 1):
        phases[k + 1] = phases[k] * (ec[k] / mag[k] if mag[k] > 0 else 1.0)
    return d, mag, q * phases[np.newaxis, :]


# --------------------------------------------------------------------------
# symmetric tridiagonal eigenproblem


def _tql_loops(d, e, z, want_z):
    # implicit-shift QL; e[i] couples i and i+1, e[n-1] is scratch
    n = d.shape[0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 2.220446049250313e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > 100:
                return -1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            early = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    early = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want_z:
                    for k in range(z.shape[0]):
                        f = z[k, i + 1]
                        z[k, i + 1] = s * z[k, i] + c * f
                        z[k, i] = c * z[k, i] - s * f
                i -= 1
            if early and i >= l:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


_tql_nb = njit(_tql_loops)


def _sturm_bisect(d, e):
    """All eigenvalues of a symmetric tridiagonal matrix by vectorized bisection."""
    n = d.shape[0]
    if n == 0 or not np.any(e[: n - 1]):
        # diagonal: exact, where the bisection bracket would only get within pivmin
        return np.sort(d)
    e2 = np.concatenate([e[: n - 1] ** 2, [0.0]])
    rad = np.abs(np.concatenate([[0.0], e[: n - 1]])) + np.abs(np.concatenate([e[: n - 1], [0.0]]))
    lo0 = float(np.min(d - rad))
    hi0 = float(np.max(d + rad))
    scale = max(abs(lo0), abs(hi0), 1e-300)
    lo = np.full(n, lo0 - _EPS * scale)
    hi = np.full(n, hi0 + _EPS * scale)
    idx = np.arange(n)
    pivmin = np.finfo(float).tiny * max(1.0, float(np.max(e2)) if n > 1 else 1.0)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        # number of eigenvalues strictly below each midpoint
        qv = d[0] - mid
        qv = np.where(np.abs(qv) < pivmin, -pivmin, qv)
        cnt = (qv < 0).astype(np.int64)
        for i in range(1, n):
            qv = d[i] - mid - e2[i - 1] / qv
            qv = np.where(np.abs(qv) < pivmin, -pivmin, qv)
            cnt += qv < 0
        below = cnt > idx
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
        if np.all(hi - lo <= 2.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi)) + pivmin):
            break
    return 0.5 * (lo + hi)


def tridiagonal_eigen(d, e, want_vectors=False):
    """Eigenvalues (ascending) and optionally eigenvectors of a symmetric tridiagonal matrix."""
    d = np.array(d, dtype=float)
    n = d.shape[0]
    ework = np.zeros(n)
    if n > 1:
        ework[: n - 1] = e[: n - 1]
    if not want_vectors and not NUMBA_ENABLED:
        return np.sort(_sturm_bisect(d, ework)), None
    z = np.eye(n) if want_vectors else np.zeros((0, 0))
    run = _tql_nb if NUMBA_ENABLED else _tql_loops
    if run(d, ework, z, want_vectors) != 0:
        raise AccuracyError("QL iteration did not converge")
    order = np.argsort(d, kind="stable")
    return d[order], (z[:, order] if want_vectors else None)


# --------------------------------------------------------------------------
# SU(1,1) number coherent state sums


def _pncs11_loops(k, n, zeta, eta, mmax):
    out = np.zeros(mmax + 1, np.complex128)
    mz = -zeta.conjugate()
    lg2kn = math.lgamma(2.0 * k + n)
    lgn1 = math.lgamma(n + 1.0)
    for m in range(mmax + 1):
        acc = 0.0j
        j0 = n - m if n - m > 0 else 0
        for j in range(j0, n + 1):
            s = m - n + j
            lm = (
                -math.lgamma(s + 1.0)
                - math.lgamma(j + 1.0)
                + eta * (k + n - j)
                + 0.5 * (lg2kn + math.lgamma(2.0 * k + m))
                - math.lgamma(2.0 * k + n - j)
                + 0.5 * (lgn1 + math.lgamma(m + 1.0))
                - math.lgamma(n - j + 1.0)
            )
            acc += zeta ** s * mz ** j * math.exp(lm)
        out[m] = acc
    return out


_pncs11_nb = njit(_pncs11_loops)


def _pncs11_numpy(k, n, zeta, eta, mmax):
    m = np.arange(mmax + 1)[:, None]
    j = np.arange(n + 1)[None, :]
    s = m - n + j
    ok = s >= 0
    s = np.where(ok, s, 0)
    lm = (
        -gammaln(s + 1.0)
        - gammaln(j + 1.0)
        + eta * (k + n - j)
        + 0.5 * (gammaln(2.0 * k + n) + gammaln(2.0 * k + m))
        - gammaln(2.0 * k + n - j)
        + 0.5 * (gammaln(n + 1.0) + gammaln(m + 1.0))
        - gammaln(n - j + 1.0)
    )
    terms = np.power(complex(zeta), s) * np.power(-np.conj(complex(zeta)), j) * np.exp(lm)
    return np.where(ok, terms, 0.0).sum(axis=1)


def pncs11_amplitudes(k, n, zeta, eta, mmax):
    """Amplitudes <k,m|D|k,n> for m = 0..mmax from the normal-ordered double sum."""
    if NUMBA_ENABLED:
        return _pncs11_nb(float(k), int(n), complex(zeta), float(eta), int(mmax))
    return _pncs11_numpy(float(k), int(n), complex(zeta), float(eta), int(mmax))
