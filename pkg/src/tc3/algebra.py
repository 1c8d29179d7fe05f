"""Jordan-Schwinger su(1,1) and su(2) generators, displacements and coherent states.

Conventions
-----------
su(1,1) on modes (b, c)::

    K0 = (n_b + n_c + 1)/2,  K+ = b^+ c^+,  K- = b c,  N_d = n_c - n_b

so a fixed-``N_d = m`` sector is the discrete series with Bargmann index
``k = (|m| + 1)/2``. su(2) on modes (a, b)::

    J0 = (n_a - n_b)/2,  J+ = a^+ b,  J- = b^+ a,  N_s = n_a + n_b

and a fixed-``N_s`` block is the multiplet ``j = N_s/2``, ordered by ascending
``mu = (n_a - n_b)/2``.

Displacements are ``D(xi) = exp(xi X+ - xi* X-)``; with ``u = xi/|xi|`` the
normal form is ``exp(zeta X+) exp(eta X0) exp(-zeta* X-)`` with
``zeta = u tanh|xi|``, ``eta = -2 ln cosh|xi|`` for su(1,1) and
``zeta = u tan|xi|``, ``eta = -2 ln cos|xi|`` for su(2).
"""

import math
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from . import kernels
from .errors import AccuracyError, DomainError, InvalidArgument
from .fock import MODES, TwoModeTruncated, monomial_matrix
from .linalg import matrix_exponential

SU11 = "su11"
SU2 = "su2"

PNCS_TAIL_TOL = 1e-14
PNCS_MAX_TERMS = 500
# the alternating double sum loses a few digits for broad states (|xi| ~ 1, k, n ~ 10),
# so the norm deficit carries ~1e-11 of rounding on top of the truncated tail
PNCS_ACCURACY = 1e-10


class SU11Generators(NamedTuple):
    K0: sp.csr_matrix
    Kplus: sp.csr_matrix
    Kminus: sp.csr_matrix
    Nd: sp.csr_matrix
    basis: TwoModeTruncated
    group: str = SU11


class SU2Generators(NamedTuple):
    J0: sp.csr_matrix
    Jplus: sp.csr_matrix
    Jminus: sp.csr_matrix
    Ns: sp.csr_matrix
    basis: TwoModeTruncated
    group: str = SU2


class DisplacementParams(NamedTuple):
    xi: complex
    zeta: complex
    eta: float


class BCHCoefficients(NamedTuple):
    group: str
    first: float  # alpha = sinh 2|xi|  or  delta = sin 2|xi|
    second: float  # beta = (cosh 2|xi| - 1)/2  or  epsilon = (cos 2|xi| - 1)/2


def _two_mode(basis, expected):
    if not isinstance(basis, TwoModeTruncated):
        raise InvalidArgument("Jordan-Schwinger generators need a TwoModeTruncated basis")
    if tuple(basis.modes) != expected:
        raise InvalidArgument(f"expected modes {expected}, got {tuple(basis.modes)}")
    occ = basis.occupations()
    i1, i2 = (MODES.index(m) for m in expected)
    return occ[:, i1].astype(float), occ[:, i2].astype(float)


def su11_generators(basis):
    nb, nc = _two_mode(basis, ("b", "c"))
    k0 = sp.diags(0.5 * (nb + nc + 1.0), format="csr").astype(np.complex128)
    kp = monomial_matrix(basis, {"b": 1, "c": 1})
    km = monomial_matrix(basis, {"b": -1, "c": -1})
    nd = sp.diags(nc - nb, format="csr").astype(np.complex128)
    return SU11Generators(k0, kp, km, nd, basis)


def su2_generators(basis):
    na, nb = _two_mode(basis, ("a", "b"))
    j0 = sp.diags(0.5 * (na - nb), format="csr").astype(np.complex128)
    jp = monomial_matrix(basis, {"a": 1, "b": -1})
    jm = monomial_matrix(basis, {"a": -1, "b": 1})
    ns = sp.diags(na + nb, format="csr").astype(np.complex128)
    return SU2Generators(j0, jp, jm, ns, basis)


def su11_sector(m, length):
    """Generators on the ``N_d = m`` sector, ``length`` states ``n = 0..length-1``."""
    if length < 1:
        raise InvalidArgument("sector length must be positive")
    top = length - 1
    if m >= 0:
        basis = TwoModeTruncated(top, top + m, ("b", "c"), n_diff=m)
    else:
        basis = TwoModeTruncated(top - m, top, ("b", "c"), n_diff=m)
    return su11_generators(basis)


def su2_multiplet(j):
    """Generators on the complete ``N_s = 2j`` block (dimension ``2j + 1``)."""
    two_j = _two_j(j)
    return su2_generators(TwoModeTruncated(two_j, two_j, ("a", "b"), n_total=two_j))


def _two_j(j):
    two_j = 2 * j
    if two_j < 0 or abs(two_j - round(two_j)) > 1e-12:
        raise InvalidArgument(f"j must be a nonnegative half-integer, got {j!r}")
    return int(round(two_j))


def _parts(generators):
    x0, xp, xm = generators[0], generators[1], generators[2]
    return generators.group, x0, xp, xm


def casimir(generators):
    group, x0, xp, xm = _parts(generators)
    sym = xp @ xm + xm @ xp
    if group == SU11:
        return (x0 @ x0 - 0.5 * sym).tocsr()
    return (x0 @ x0 + 0.5 * sym).tocsr()


def casimir_expected(generators):
    """Closed form of the Casimir in terms of ``N_d`` or ``N_s``."""
    n = generators[3]
    ident = sp.identity(n.shape[0], format="csr")
    if generators.group == SU11:
        return (0.25 * (n @ n) - 0.25 * ident).tocsr()
    return (0.5 * n @ (0.5 * n + ident)).tocsr()


def displacement_params(group, xi):
    xi = complex(xi)
    r = abs(xi)
    if r == 0.0:
        return DisplacementParams(xi, 0j, 0.0)
    u = xi / r
    if group == SU11:
        return DisplacementParams(xi, u * math.tanh(r), -2.0 * math.log(math.cosh(r)))
    if group == SU2:
        if r >= math.pi / 2:
            raise DomainError(f"su(2) normal form needs |xi| < pi/2, got {r}")
        return DisplacementParams(xi, u * math.tan(r), -2.0 * math.log(math.cos(r)))
    raise InvalidArgument(f"unknown group {group!r}")


def bch_coefficients(group, xi):
    r2 = 2.0 * abs(complex(xi))
    if group == SU11:
        return BCHCoefficients(group, math.sinh(r2), 0.5 * (math.cosh(r2) - 1.0))
    if group == SU2:
        return BCHCoefficients(group, math.sin(r2), 0.5 * (math.cos(r2) - 1.0))
    raise InvalidArgument(f"unknown group {group!r}")


def displacement_exact(generators, xi):
    """``exp(xi X+ - xi* X-)`` as a dense matrix."""
    _, _, xp, xm = _parts(generators)
    xi = complex(xi)
    return matrix_exponential((xi * xp - np.conj(xi) * xm).toarray())


def _exp_nilpotent(x):
    # ladder generators raise or lower a bounded number, so the series terminates
    dim = x.shape[0]
    total = sp.identity(dim, dtype=np.complex128, format="csr")
    term = total
    for p in range(1, dim + 1):
        term = (term @ x) / p
        term.eliminate_zeros()
        if term.nnz == 0:
            break
        total = total + term
    return total.toarray()


def displacement_normal_order(generators, xi):
    """``exp(zeta X+) exp(eta X0) exp(-zeta* X-)`` for the same displacement."""
    group, x0, xp, xm = _parts(generators)
    par = displacement_params(group, xi)
    if group == SU11 and abs(par.zeta) >= 1.0:
        raise DomainError("su(1,1) normal form needs |zeta| < 1")
    left = _exp_nilpotent((par.zeta * xp).tocsr())
    right = _exp_nilpotent((-np.conj(par.zeta) * xm).tocsr())
    middle = np.exp(par.eta * x0.diagonal().real)
    return (left * middle[np.newaxis, :]) @ right


def pncs_su11(k, n, xi, truncation=None):
    """Amplitudes ``<k, m| D(xi) |k, n>`` for ``m = 0, 1, ...``.

    Without ``truncation`` the vector is cut where the remaining tail falls
    below ``PNCS_TAIL_TOL`` (at most ``PNCS_MAX_TERMS`` entries). Raises
    :class:`AccuracyError` when the missing probability exceeds
    ``PNCS_ACCURACY``.
    """
    if not k > 0:
        raise InvalidArgument(f"Bargmann index must be positive, got {k!r}")
    if int(n) != n or n < 0:
        raise InvalidArgument(f"n must be a nonnegative integer, got {n!r}")
    n = int(n)
    par = displacement_params(SU11, xi)
    mmax = (PNCS_MAX_TERMS - 1) if truncation is None else int(truncation)
    if mmax < n:
        raise InvalidArgument("truncation must reach the seed state")
    amps = kernels.pncs11_amplitudes(k, n, par.zeta, par.eta, mmax)
    if truncation is None:
        tail = np.sqrt(np.cumsum(np.abs(amps[::-1]) ** 2)[::-1])
        keep = np.nonzero(tail >= PNCS_TAIL_TOL)[0]
        last = max(int(keep[-1]) + 1 if keep.size else 0, n + 1)
        amps = amps[:last]
    missing = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)))
    if missing > PNCS_ACCURACY:
        raise AccuracyError(
            f"PNCS series truncated at {amps.size} terms misses probability {missing:.3e}",
            estimate=missing,
        )
    return amps


def _check_su2_label(j, mu):
    two_j = _two_j(j)
    jm = j - mu
    if abs(jm - round(jm)) > 1e-12 or mu < -j - 1e-12 or mu > j + 1e-12:
        raise InvalidArgument(f"invalid su(2) label j={j}, mu={mu}")
    return two_j, int(round(j - mu)), int(round(j + mu))


def pncs_su2(j, mu, xi):
    """Amplitudes ``<j, mu'| D(xi) |j, mu>`` for ``mu' = -j..j`` (ascending).

    The normal-ordered sum cancels terms as large as ``(1 + tan^2|xi|)^(2j)``,
    so the absolute error grows from ~1e-15 at small ``|xi|`` to that factor
    times machine precision as ``|xi|`` approaches ``pi/2``.
    """
    two_j, jmm, jpm = _check_su2_label(j, mu)
    par = displacement_params(SU2, xi)
    zeta, eta = par.zeta, par.eta
    mz = -np.conj(zeta)
    lg = math.lgamma
    out = np.zeros(two_j + 1, dtype=np.complex128)
    for nn in range(jpm + 1):
        for s in range(jmm + nn + 1):
            # target mu' = mu - nn + s; index mu' + j
            idx = jpm - nn + s
            mag = math.exp(
                eta * (mu - nn)
                - lg(s + 1) - lg(nn + 1)
                + lg(jmm + nn + 1) - lg(jpm - nn + 1)
                + 0.5 * (lg(jpm + 1) + lg(jpm - nn + s + 1) - lg(jmm + 1) - lg(jmm + nn - s + 1))
            )
            out[idx] += zeta ** s * mz ** nn * mag
    return out


def similarity_closed_form(generators, xi):
    """``D^+ X D`` for ``X = X0, X+, X-`` from the BCH closed forms."""
    group, x0, xp, xm = _parts(generators)
    xi = complex(xi)
    if xi == 0:
        return x0.copy(), xp.copy(), xm.copy()
    u = xi / abs(xi)
    uc = np.conj(u)
    c = bch_coefficients(group, xi)
    if group == SU11:
        alpha, beta = c.first, c.second
        k0 = (2 * beta + 1) * x0 + (alpha * u / 2) * xp + (alpha * uc / 2) * xm
        kp = uc * alpha * x0 + beta * (xp + (uc / u) * xm) + xp
        km = u * alpha * x0 + beta * (xm + (u / uc) * xp) + xm
    else:
        delta, eps = c.first, c.second
        k0 = (2 * eps + 1) * x0 + (delta * u / 2) * xp + (delta * uc / 2) * xm
        kp = -uc * delta * x0 + eps * (xp + (uc / u) * xm) + xp
        km = -u * delta * x0 + eps * (xm + (u / uc) * xp) + xm
    return k0.tocsr(), kp.tocsr(), km.tocsr()


def similarity_numeric(generators, xi):
    """``D^+ X D`` by explicit conjugation with the matrix exponential."""
    d = displacement_exact(generators, xi)
    dh = d.conj().T
    return tuple(dh @ g.toarray() @ d for g in generators[:3])


def tilt_xi_su11(s, lam):
    """Displacement removing ``lam K+ + lam* K-`` from ``s K0 + ...`` (needs ``2|lam| < s``)."""
    lam = complex(lam)
    if abs(2 * lam) >= s:
        raise DomainError(f"hyperbolic regime: |2 lambda| = {abs(2 * lam)} >= S = {s}")
    if lam == 0:
        return 0j
    tau = math.atanh(2 * abs(lam) / s)
    return -0.5 * tau * lam / abs(lam)


def tilt_xi_su2(d, lam):
    """Displacement removing ``lam J+ + lam* J-`` from ``d J0 + ...``."""
    lam = complex(lam)
    if lam == 0:
        return 0j
    theta = math.atan2(2 * abs(lam), d)
    return -0.5 * theta * lam / abs(lam)
