"""Closed-form spectra, transformation parameters and coherent-state expectation values.

Operator-valued parameters (square roots of ``a^+ a`` or ``c^+ c``) are
evaluated at number eigenvalues. Where a radicand can go negative the
functions return a Python ``complex`` instead of ``float``; use
:func:`is_nonreal` to test for that.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, InvalidArgument, MethodInapplicable

DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    omega1: float
    omega2: float
    omega3: float
    g: float

    def __post_init__(self):
        for name in ("omega1", "omega2", "omega3"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise InvalidArgument(f"{name} must be a positive frequency, got {value!r}")
        if not math.isfinite(self.g):
            raise InvalidArgument("g must be finite")

    def with_g(self, g):
        return ModelParams(self.omega1, self.omega2, self.omega3, g)


class QuantumNumbersSU11(NamedTuple):
    n_a: int
    n_l: int
    m_n: int


class QuantumNumbersNM(NamedTuple):
    N_c: int
    N_1: int
    N_2: int


class QuantumNumbersSU2(NamedTuple):
    n_c: int
    n_l: int
    m_n: int


class TiltSU11(NamedTuple):
    theta: float
    domain_ok: bool


class BogoliubovParams(NamedTuple):
    r: float
    domain_ok: bool


class NormalModeCoeffs(NamedTuple):
    X2: float
    Y2: float
    Omega: float


def is_nonreal(value):
    return isinstance(value, complex)


def _sqrt_tagged(radicand):
    if radicand >= 0:
        return math.sqrt(radicand)
    return 1j * math.sqrt(-radicand)


def _finish(value):
    if isinstance(value, complex) and value.imag == 0.0:
        return value.real
    return value


def _require_nonneg(**kwargs):
    for name, value in kwargs.items():
        if int(value) != value or value < 0:
            raise InvalidArgument(f"{name} must be a nonnegative integer, got {value!r}")


def _degenerate_omega(params):
    if abs(params.omega2 - params.omega3) > DEGENERACY_TOL:
        raise MethodInapplicable(
            f"Bogoliubov treatment needs omega2 == omega3 (got {params.omega2}, {params.omega3})"
        )
    return params.omega2


# ---------------------------------------------------------------------------
# Bogoliubov (w2 = w3)


def bogoliubov_params(params, n_a):
    """Squeezing parameter ``r`` at pump occupation ``n_a``; ``domain_ok`` is False past the log pole."""
    _require_nonneg(n_a=n_a)
    w = _degenerate_omega(params)
    coupling = abs(params.g) * math.sqrt(n_a)
    if coupling >= w:
        return BogoliubovParams(math.nan, False)
    return BogoliubovParams(0.5 * math.log((w + coupling) / (w - coupling)), True)


def energy_bogoliubov(params, n_a, n_abar, n_d):
    _require_nonneg(n_a=n_a, n_abar=n_abar, n_d=n_d)
    w = _degenerate_omega(params)
    root = _sqrt_tagged(w * w - params.g ** 2 * n_a)
    return _finish(root * (n_abar + n_d + 1) + params.omega1 * n_a - w)


# ---------------------------------------------------------------------------
# SU(1,1) tilting


def energy_su11(params, q):
    """Tilted SU(1,1) level for ``q = (n_a, n_l, m_n)``.

    ``m_n`` is the eigenvalue of ``n_c - n_b``. For ``m_n < 0`` the Bargmann
    index uses ``|m_n|``; for ``m_n >= 0`` both readings coincide.
    """
    n_a, n_l, m_n = q
    _require_nonneg(n_a=n_a, n_l=n_l)
    s = params.omega2 + params.omega3
    root = _sqrt_tagged(s * s - 4.0 * params.g ** 2 * n_a)
    value = (
        root * (n_l + abs(m_n) / 2 + 0.5)
        + params.omega1 * n_a
        + (params.omega3 - params.omega2) * m_n / 2
        - s / 2
    )
    return _finish(value)


def tilt_params_su11(params, n_a):
    """Tilt angle ``theta = artanh(2 g sqrt(n_a) / (w2 + w3))``.

    The azimuth is fixed by taking the effective coupling ``g sqrt(n_a)`` real;
    :func:`tc3.algebra.tilt_xi_su11` turns the pair into a displacement.
    """
    _require_nonneg(n_a=n_a)
    x = 2.0 * params.g * math.sqrt(n_a) / (params.omega2 + params.omega3)
    if abs(x) >= 1.0:
        return TiltSU11(math.nan, False)
    return TiltSU11(math.atanh(x), True)


# ---------------------------------------------------------------------------
# normal modes


def normal_mode_coeffs(params, n_c):
    """``|X|^2``, ``|Y|^2`` and ``Omega`` with detuning ``w1 - w2``.

    Each squared norm is taken from whichever expression has no cancellation,
    so the removable point ``n_c = 0`` resolves to its limit. ``Omega = 0``
    returns the identity mixing ``(1, 0, 0)``.
    """
    _require_nonneg(n_c=n_c)
    delta = params.omega1 - params.omega2
    c = params.g ** 2 * n_c
    omega = math.sqrt(delta * delta + 4.0 * c)
    if omega == 0.0:
        return NormalModeCoeffs(1.0, 0.0, 0.0)
    if delta >= 0:
        x2 = (omega + delta) / (2.0 * omega)
        y2 = 2.0 * c / (omega * (omega + delta))
    else:
        x2 = 2.0 * c / (omega * (omega - delta))
        y2 = (omega - delta) / (2.0 * omega)
    return NormalModeCoeffs(x2, y2, omega)


def energy_normal_mode(params, q, delta_sign="paper"):
    """Interaction-picture level ``(N_c, N_1, N_2)``.

    ``delta_sign="paper"`` uses the published detuning ``w2 - w1``; ``"alt"``
    uses ``w1 - w2``, the detuning the normal modes were built from.
    """
    n_c, n1, n2 = q
    _require_nonneg(N_c=n_c, N_1=n1, N_2=n2)
    if delta_sign == "paper":
        d = params.omega2 - params.omega1
    elif delta_sign == "alt":
        d = params.omega1 - params.omega2
    else:
        raise InvalidArgument(f"delta_sign must be 'paper' or 'alt', got {delta_sign!r}")
    root = math.sqrt(d * d + 4.0 * params.g ** 2 * n_c)
    return 0.5 * root * (n1 - n2) + 0.5 * d * (n1 + n2) + params.omega3 * n_c


# ---------------------------------------------------------------------------
# SU(2) tilting


def energy_su2(params, q):
    """Tilted SU(2) level for ``q = (n_c, n_l, m_n)`` with ``j = n_l + m_n/2``, ``mu = m_n/2``."""
    n_c, n_l, m_n = q
    _require_nonneg(n_c=n_c, n_l=n_l)
    if n_l + m_n / 2 < abs(m_n) / 2:
        raise InvalidArgument(f"(n_l={n_l}, m_n={m_n}) is not a valid multiplet label")
    d = params.omega2 - params.omega1
    root = math.sqrt(d * d + 4.0 * params.g ** 2 * n_c)
    return 0.5 * root * m_n + (params.omega2 + params.omega1) * (n_l + m_n / 2) + params.omega3 * n_c


def tilt_params_su2(params, n_c):
    """``theta = atan2(2 g sqrt(n_c), w2 - w1)``; 0 when both arguments vanish."""
    _require_nonneg(n_c=n_c)
    y = 2.0 * params.g * math.sqrt(n_c)
    x = params.omega2 - params.omega1
    if x == 0.0 and y == 0.0:
        return 0.0
    return math.atan2(y, x)


# ---------------------------------------------------------------------------
# coherent-state expectation values


def expval_su11(params, alpha, n, m_n):
    _require_nonneg(n=n)
    a2 = abs(alpha) ** 2
    s = params.omega2 + params.omega3
    root = _sqrt_tagged(s * s - 4.0 * params.g ** 2 * a2)
    value = (
        0.5 * root * (n + 1)
        + params.omega1 * a2
        + (params.omega3 - params.omega2) * m_n / 2
        - s / 2
    )
    return _finish(value)


def expval_su2(params, beta, n_prime, m_prime):
    _require_nonneg(n_prime=n_prime)
    b2 = abs(beta) ** 2
    d = params.omega2 - params.omega1
    root = math.sqrt(d * d + 4.0 * params.g ** 2 * b2)
    return 0.5 * root * m_prime + 0.5 * (params.omega2 + params.omega1) * n_prime + params.omega3 * b2


def matching_alpha(g, omega, beta_abs):
    """Pump amplitude at which the two lowest expectation values coincide (small-g form)."""
    if omega <= 0:
        raise InvalidArgument("omega must be positive")
    if abs(g) >= omega:
        raise DomainError(f"matching needs |g| < omega (g={g}, omega={omega})")
    return abs(beta_abs) / math.sqrt(1.0 - (g / omega) ** 2)


def matching_alpha_exact(g, omega, beta_abs):
    """Root of ``<H>_alpha = <H>_beta`` for the lowest isotropic states, no expansion.

    Solves ``sqrt(w^2 - g^2 x) + w x - w = w b^2`` for ``x = |alpha|^2``.
    """
    if omega <= 0:
        raise InvalidArgument("omega must be positive")
    if abs(g) >= omega:
        raise DomainError(f"matching needs |g| < omega (g={g}, omega={omega})")
    b2 = beta_abs ** 2
    if g == 0:
        return abs(beta_abs)
    # (w(1 + b2) - w x)^2 = w^2 - g^2 x, take the root with w x <= w(1 + b2)
    w = omega
    c = 1.0 + b2
    qa = w * w
    qb = -(2.0 * w * w * c - g * g)
    qc = w * w * (c * c - 1.0)
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0:
        raise DomainError("no real matching amplitude")
    x = (-qb - math.sqrt(disc)) / (2.0 * qa)
    # squaring admits a spurious root; keep x only if the unsquared equation holds
    if x < 0 or g * g * x > w * w or x > c:
        raise DomainError("no real matching amplitude")
    return math.sqrt(x)
