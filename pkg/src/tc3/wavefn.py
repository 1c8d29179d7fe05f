"""Oscillator eigenfunctions, number-coherent-state wavefunctions and quadrature.

Units are unit mass and frequency with hbar = 1. The two-dimensional functions
are

    psi_{n,m}(rho, phi) = (-1)^n sqrt(n!/(n+|m|)!)/sqrt(pi) e^{i m phi}
                          rho^|m| L_n^{|m|}(rho^2) e^{-rho^2/2}

normalized against ``rho drho dphi``. Negative ``m`` is accepted so that the
su(2) multiplets, which contain both signs of ``mu``, can be expanded in the
same basis.

Conventions for the displaced states (checked numerically against the mode
expansions, see the tests):

* su(1,1): ``pncs_wavefunction_su11(n, m, zeta)`` equals
  ``sum_n' A_{n',n}(-zeta) psi_{n',m}`` where ``A(zeta)`` are the amplitudes of
  :func:`tc3.algebra.pncs_su11` for the displacement whose normal-ordered
  parameter is ``zeta``. The sign flip comes from the ``(-1)^n`` phase in the
  basis functions.
* su(2): ``pncs_wavefunction_su2(n, m, zeta)`` with ``j = n + m/2`` and
  ``mu = m/2`` equals ``sum_mu' B_{mu',mu}(zeta) psi_{j-|mu'|, 2 mu'}`` with
  ``B`` from :func:`tc3.algebra.pncs_su2`, no extra phases.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss

from . import kernels
from .algebra import _check_su2_label, displacement_params, pncs_su2
from .errors import DomainError, InvalidArgument

DEFAULT_N_RHO = 96
DEFAULT_N_PHI = 128
DEFAULT_RHO_MAX = 10.0
DEFAULT_N_X = 96
TAIL_TOL = 1e-9


class AccuracyWarning(UserWarning):
    """Quadrature grid probably too small for the function's support."""


# ---------------------------------------------------------------------------
# orthogonal polynomials


def _check_degree(n):
    if int(n) != n or n < 0:
        raise InvalidArgument(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


def hermite(n, x):
    """Physicists' Hermite polynomial ``H_n(x)`` by the three-term recurrence."""
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def assoc_laguerre(n, alpha, x):
    """Generalized Laguerre polynomial ``L_n^alpha(x)``.

    The recurrence in ``n`` is a polynomial identity, so any real ``alpha``
    (including negative integers) is accepted.
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=np.result_type(x, float))
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev
    l_cur = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, l_cur = l_cur, ((2 * k + 1 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1)
    return l_cur


# ---------------------------------------------------------------------------
# oscillator eigenfunctions


def ho1d(n, x):
    """Normalized 1D oscillator eigenfunction, built by the normalized recurrence."""
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    psi_prev = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n == 0:
        return psi_prev
    psi = math.sqrt(2.0) * x * psi_prev
    for k in range(1, n):
        psi_prev, psi = psi, math.sqrt(2.0 / (k + 1)) * x * psi - math.sqrt(k / (k + 1)) * psi_prev
    return psi


def _radial_norm(n, am):
    return math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(n + am + 1))) / math.sqrt(math.pi)


def ho2d(n_l, m_n, rho, phi):
    """Normalized 2D oscillator eigenfunction ``psi_{n_l, m_n}(rho, phi)``."""
    n_l = _check_degree(n_l)
    if int(m_n) != m_n:
        raise InvalidArgument(f"m_n must be an integer, got {m_n!r}")
    m_n = int(m_n)
    am = abs(m_n)
    rho = np.asarray(rho, dtype=float)
    phi = np.asarray(phi, dtype=float)
    radial = (-1) ** n_l * _radial_norm(n_l, am) * rho ** am * assoc_laguerre(n_l, am, rho * rho)
    return radial * np.exp(-0.5 * rho * rho) * np.exp(1j * m_n * phi)


# ---------------------------------------------------------------------------
# grids and samples


@dataclass(frozen=True)
class GridSpec:
    """Sample points and quadrature weights.

    ``variant`` is ``"cartesian"`` (points ``x``) or ``"polar"`` (tensor grid
    ``rho`` x ``phi``). ``weights`` already include every measure factor, so
    ``sum(weights * |psi|^2)`` is the norm.
    """

    variant: str
    x: np.ndarray = field(default=None, repr=False)
    rho: np.ndarray = field(default=None, repr=False)
    phi: np.ndarray = field(default=None, repr=False)
    weights: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        axes = (self.x,) if self.variant == "cartesian" else (self.rho, self.phi)
        if self.variant not in ("cartesian", "polar"):
            raise InvalidArgument(f"unknown grid variant {self.variant!r}")
        for axis in axes:
            if axis is None or axis.size < 2 or np.any(np.diff(axis) <= 0):
                raise InvalidArgument("grid axes need at least 2 strictly increasing points")

    @property
    def shape(self):
        if self.variant == "cartesian":
            return self.x.shape
        return (self.rho.size, self.phi.size)

    def mesh(self):
        """Coordinate arrays broadcast to :attr:`shape`."""
        if self.variant == "cartesian":
            return (self.x,)
        return np.meshgrid(self.rho, self.phi, indexing="ij")


def cartesian_grid(n=DEFAULT_N_X):
    """Gauss-Hermite nodes; weights rescaled by ``exp(x^2)`` for plain integrands."""
    if n < 2:
        raise InvalidArgument("need at least 2 nodes")
    x, w = hermgauss(n)
    return GridSpec("cartesian", x=x, weights=w * np.exp(x * x))


def polar_grid(n_rho=DEFAULT_N_RHO, n_phi=DEFAULT_N_PHI, rho_max=DEFAULT_RHO_MAX):
    """Gauss-Legendre in ``rho`` on ``[0, rho_max]`` times the periodic trapezoid in ``phi``."""
    if n_rho < 2 or n_phi < 2:
        raise InvalidArgument("need at least 2 nodes per axis")
    if not rho_max > 0:
        raise InvalidArgument("rho_max must be positive")
    t, w = leggauss(n_rho)
    rho = 0.5 * rho_max * (t + 1.0)
    w_rho = 0.5 * rho_max * w * rho
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    w_phi = np.full(n_phi, 2.0 * np.pi / n_phi)
    return GridSpec("polar", rho=rho, phi=phi, weights=np.outer(w_rho, w_phi))


class WaveSample(NamedTuple):
    coords: tuple
    value: complex


@dataclass(frozen=True)
class WaveSamples:
    """Wavefunction values on a grid (array of :attr:`GridSpec.shape`)."""

    grid: GridSpec
    values: np.ndarray
    method: str = "closed"

    def samples(self):
        """Flat list of :class:`WaveSample` in grid order."""
        coords = [c.ravel() for c in self.grid.mesh()]
        vals = self.values.ravel()
        return [WaveSample(tuple(float(c[i]) for c in coords), complex(vals[i])) for i in range(vals.size)]

    def rows(self):
        """``(coords..., re, im, abs2)`` rows for CSV export."""
        coords = [c.ravel() for c in self.grid.mesh()]
        vals = self.values.ravel()
        return np.column_stack(coords + [vals.real, vals.imag, np.abs(vals) ** 2])


def _evaluate(func, grid):
    return np.asarray(func(*grid.mesh()))


def sample(func, grid):
    return WaveSamples(grid, _evaluate(func, grid), method="function")


# ---------------------------------------------------------------------------
# quadrature


def _tail_estimate(values, grid):
    dens = np.abs(values) ** 2
    if grid.variant == "polar":
        f = dens.mean(axis=1)
        r = grid.rho
        edges = [(f[-1], f[-2], r[-1], r[-2], 2.0 * np.pi)]
    else:
        x = grid.x
        edges = [(dens[-1], dens[-2], x[-1], x[-2], 1.0), (dens[0], dens[1], -x[0], -x[1], 1.0)]
    total = 0.0
    for f_out, f_in, r_out, r_in, ang in edges:
        if f_out == 0.0:
            continue
        if f_in > f_out:
            rate = math.log(f_in / f_out) / (r_out * r_out - r_in * r_in)
            # integral of r e^{-rate r^2} (polar) or e^{-rate x^2} (line) beyond the last node
            if grid.variant == "polar":
                total += ang * f_out * r_out / (2.0 * rate * r_out)
            else:
                total += f_out / (2.0 * rate * r_out)
        else:
            total = math.inf
    return total


def quadrature_norm(psi, grid):
    """``integral |psi|^2`` on ``grid``.

    ``psi`` is a :class:`WaveSamples`, an array of grid shape, or a callable
    taking the mesh coordinates. Emits :class:`AccuracyWarning` when the
    function has not decayed at the outer nodes (estimated tail > 1e-9).
    """
    if isinstance(psi, WaveSamples):
        values = psi.values
    elif callable(psi):
        values = _evaluate(psi, grid)
    else:
        values = np.asarray(psi)
    if values.shape != grid.shape:
        raise InvalidArgument(f"samples shape {values.shape} does not match grid {grid.shape}")
    tail = _tail_estimate(values, grid)
    if tail > TAIL_TOL:
        warnings.warn(f"grid too small: estimated tail mass {tail:.3e}", AccuracyWarning, stacklevel=2)
    return float(np.sum(grid.weights * np.abs(values) ** 2))


def overlap(psi1, psi2, grid):
    """``<psi1|psi2>`` by the same quadrature."""
    return complex(np.sum(grid.weights * np.conj(psi1) * psi2))


# ---------------------------------------------------------------------------
# displaced (number coherent) states


def _check_zeta11(zeta):
    zeta = complex(zeta)
    if abs(zeta) >= 1.0:
        raise DomainError(f"su(1,1) coherent parameter needs |zeta| < 1, got {abs(zeta)}")
    return zeta


def _xi_from_zeta11(zeta):
    r = abs(zeta)
    return 0j if r == 0 else zeta / r * math.atanh(r)


def _series_su11(n_l, m_n, zeta, rho, phi):
    eta = math.log1p(-abs(zeta) ** 2)
    k = (abs(m_n) + 1) / 2
    # grow the expansion until the amplitude tail is negligible
    mmax = max(2 * n_l + 40, 60)
    while True:
        amps = kernels.pncs11_amplitudes(k, n_l, -zeta, eta, mmax)
        if np.sum(np.abs(amps[-10:]) ** 2) < 1e-30 or mmax > 4000:
            break
        mmax *= 2
    out = np.zeros(np.broadcast(rho, phi).shape, dtype=np.complex128)
    for n, amp in enumerate(amps):
        if amp != 0:
            out += amp * ho2d(n, m_n, rho, phi)
    return out


def _closed_su11(n_l, m_n, zeta, rho, phi):
    am = abs(m_n)
    q = 1.0 - abs(zeta) ** 2
    one_m = 1.0 - zeta
    pref = (
        _radial_norm(n_l, am)
        * (-(1.0 - np.conj(zeta)) / one_m) ** n_l
        * q ** (0.5 * (am + 1))
        / one_m ** (am + 1)
    )
    x = rho * rho
    lag = assoc_laguerre(n_l, am, x * q / abs(one_m) ** 2)
    return pref * np.exp(1j * m_n * phi) * rho ** am * lag * np.exp(-0.5 * x * (1.0 + zeta) / one_m)


def pncs_wavefunction_su11(n_l, m_n, zeta, grid, method="closed"):
    """Displaced 2D oscillator state ``psi_{zeta, n_l, m_n}`` on a polar grid.

    ``method="closed"`` uses the closed form (valid for every ``|zeta| < 1``);
    ``method="series"`` sums the mode expansion instead.
    """
    n_l = _check_degree(n_l)
    zeta = _check_zeta11(zeta)
    if grid.variant != "polar":
        raise InvalidArgument("2D wavefunctions need a polar grid")
    rho, phi = grid.mesh()
    if zeta == 0:
        return WaveSamples(grid, ho2d(n_l, m_n, rho, phi), method="closed")
    if method == "closed":
        values = _closed_su11(n_l, m_n, zeta, rho, phi)
    elif method == "series":
        values = _series_su11(n_l, m_n, zeta, rho, phi)
    else:
        raise InvalidArgument(f"unknown method {method!r}")
    return WaveSamples(grid, values, method=method)


def _su2_term_basis(n_lp, m_p, rho, phi):
    # rho^m L_{n}^{(m)}(rho^2) with a possibly negative m, times the angular factor
    x = rho * rho
    k = -m_p
    if k > 0 and n_lp >= k:
        # L_n^(-k)(x) = (-x)^k (n-k)!/n! L_{n-k}^(k)(x): evaluating the left side directly
        # leaves rounding in the vanishing low-order coefficients, which rho^(-k) amplifies
        scale = (-1) ** k * math.exp(math.lgamma(n_lp - k + 1) - math.lgamma(n_lp + 1))
        radial = scale * rho ** float(k) * assoc_laguerre(n_lp - k, k, x)
    else:
        radial = rho ** float(m_p) * assoc_laguerre(n_lp, m_p, x)
    return radial * np.exp(1j * m_p * phi)


def pncs_wavefunction_su2(n_l, m_n, zeta, grid):
    """Displaced su(2) multiplet state with ``j = n_l + m_n/2``, ``mu = m_n/2``.

    Direct evaluation of the finite double sum. Terms whose Laguerre upper
    index is negative are well defined through the recurrence.
    """
    n_l = _check_degree(n_l)
    if int(m_n) != m_n:
        raise InvalidArgument(f"m_n must be an integer, got {m_n!r}")
    m_n = int(m_n)
    j = n_l + m_n / 2
    mu = m_n / 2
    _check_su2_label(j, mu)
    if grid.variant != "polar":
        raise InvalidArgument("2D wavefunctions need a polar grid")
    zeta = complex(zeta)
    eta = math.log1p(abs(zeta) ** 2)
    rho, phi = grid.mesh()
    mz = -np.conj(zeta)
    lg = math.lgamma
    norm = math.exp(0.5 * (lg(n_l + m_n + 1) - lg(n_l + 1))) / math.sqrt(math.pi)
    total = np.zeros(rho.shape, dtype=np.complex128)
    for nn in range(n_l + m_n + 1):
        for s in range(n_l + nn + 1):
            n_lp = n_l + nn - s
            m_p = m_n - 2 * nn + 2 * s
            coef = (
                zeta ** s
                * mz ** nn
                * math.exp(0.5 * eta * (m_n - 2 * nn) - lg(s + 1) - lg(nn + 1) + lg(n_l + nn + 1) - lg(n_l + m_n - nn + 1))
                * (-1) ** (n_l + nn - s)
            )
            total += coef * _su2_term_basis(n_lp, m_p, rho, phi)
    values = norm * total * np.exp(-0.5 * rho * rho)
    return WaveSamples(grid, values, method="closed")


def pncs_series_su2(n_l, m_n, zeta, grid):
    """Mode-expansion oracle: su(2) amplitudes times ``psi_{j-|mu'|, 2mu'}``."""
    j = n_l + m_n / 2
    mu = m_n / 2
    zeta = complex(zeta)
    r = abs(zeta)
    xi = 0j if r == 0 else zeta / r * math.atan(r)
    amps = pncs_su2(j, mu, xi)
    rho, phi = grid.mesh()
    two_j = int(round(2 * j))
    out = np.zeros(rho.shape, dtype=np.complex128)
    for i in range(two_j + 1):
        mu_p = -j + i
        n_p = int(round(j - abs(mu_p)))
        out += amps[i] * ho2d(n_p, int(round(2 * mu_p)), rho, phi)
    return WaveSamples(grid, out, method="series")


def zeta_from_xi(group, xi):
    """Normal-ordered parameter for the displacement ``xi`` (convenience for callers)."""
    return displacement_params(group, xi).zeta


__all__ = [
    "AccuracyWarning",
    "GridSpec",
    "WaveSample",
    "WaveSamples",
    "assoc_laguerre",
    "cartesian_grid",
    "hermite",
    "ho1d",
    "ho2d",
    "overlap",
    "pncs_series_su2",
    "pncs_wavefunction_su11",
    "pncs_wavefunction_su2",
    "polar_grid",
    "quadrature_norm",
    "sample",
    "zeta_from_xi",
]
