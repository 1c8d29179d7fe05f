"""Exact block spectra, scalar tilting surrogates and analytic-vs-exact tables.

The Hamiltonian conserves ``n_a + n_b`` and ``n_a + n_c``, so every block is a
finite Hermitian matrix and its spectrum is exact. The surrogates replace the
pump amplitude inside the tilted Hamiltonians by a c-number ``lambda``; for
those the closed-form spectra are theorems, which makes them a clean check of
the group-theoretic tilting.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import su2_multiplet, su11_sector
from .errors import DomainError, InvalidArgument
from .fock import Block, hamiltonian_matrix
from .linalg import eigen_residuals, hermitian_eigenvalues, hermitian_eigh, matrix_exponential
from .spectra import (
    energy_bogoliubov,
    energy_normal_mode,
    energy_su2,
    energy_su11,
)

METHODS = ("exact", "bogoliubov", "su11", "normal_mode", "su2", "surrogate")
ANALYTIC_METHODS = ("su11", "bogoliubov", "normal_mode", "su2")
SU11_MIN_CUTOFF = 40


@dataclass
class SpectrumResult:
    labels: dict
    eigenvalues: np.ndarray
    method: str
    analytic: np.ndarray | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidArgument(f"unknown method tag {self.method!r}")
        self.eigenvalues = np.asarray(self.eigenvalues)
        if self.eigenvalues.size > 1 and np.any(np.diff(self.eigenvalues.real) < 0):
            raise InvalidArgument("eigenvalues must be ascending")

    def low_lying(self, count):
        return self.eigenvalues[:count]

    def to_dict(self):
        out = dict(self.labels)
        out["method"] = self.method
        out["eigenvalues"] = [float(v) for v in self.eigenvalues]
        if self.analytic is not None:
            out["analytic"] = [float(v) for v in self.analytic]
        return out


@dataclass
class ConvergenceReport:
    cutoffs: list
    levels: list  # per cutoff, the lowest ``n_levels`` eigenvalues
    differences: list = field(default_factory=list)  # max |change| between successive cutoffs
    monotone: bool = True

    @classmethod
    def from_levels(cls, cutoffs, levels):
        diffs = [float(np.max(np.abs(b - a))) for a, b in zip(levels, levels[1:])]
        # variational upper bounds from nested truncations decrease, and the steps should shrink
        monotone = all(d2 <= d1 for d1, d2 in zip(diffs, diffs[1:]))
        return cls(list(cutoffs), [np.asarray(v) for v in levels], diffs, monotone)


# ---------------------------------------------------------------------------
# exact blocks


def block_spectrum(params, q_ab, q_ac):
    """Exact eigenvalues of the Hamiltonian on Block(q_ab, q_ac)."""
    block = Block(q_ab, q_ac)
    w = hermitian_eigenvalues(hamiltonian_matrix(params, block))
    return SpectrumResult({"q_ab": int(q_ab), "q_ac": int(q_ac)}, w, "exact")


# ---------------------------------------------------------------------------
# surrogates


def surrogate_su11_spectrum(S, delta, lam, m_nd, cutoff):
    """``S K0 + lam K+ + lam* K- + (delta/2) N_d - S/2`` on the ``N_d = m_nd`` sector.

    Returns all ``cutoff`` numeric eigenvalues together with the closed form
    ``sqrt(S^2 - 4|lam|^2)(k + n) + (delta/2) m_nd - S/2``; only the low-lying
    part of a truncated spectrum is meaningful.
    """
    lam = complex(lam)
    if not S > 0:
        raise InvalidArgument(f"S must be positive, got {S!r}")
    if abs(2 * lam) >= S:
        raise DomainError(f"hyperbolic regime: |2 lambda| = {abs(2 * lam)} >= S = {S}")
    if cutoff < SU11_MIN_CUTOFF:
        raise InvalidArgument(f"cutoff must be at least {SU11_MIN_CUTOFF}, got {cutoff}")
    gens = su11_sector(m_nd, cutoff)
    ident_shift = 0.5 * delta * m_nd - 0.5 * S
    h = S * gens.K0 + lam * gens.Kplus + np.conj(lam) * gens.Kminus
    w = hermitian_eigenvalues(h) + ident_shift
    k = 0.5 * (abs(m_nd) + 1)
    analytic = math.sqrt(S * S - 4 * abs(lam) ** 2) * (k + np.arange(cutoff)) + ident_shift
    labels = {"S": S, "delta": delta, "lambda": [lam.real, lam.imag], "m_nd": int(m_nd), "cutoff": int(cutoff)}
    return SpectrumResult(labels, w, "surrogate", analytic)


def surrogate_su2_spectrum(d, lam, j):
    """``d J0 + lam J+ + lam* J-`` on the spin-``j`` multiplet, with its closed form."""
    lam = complex(lam)
    gens = su2_multiplet(j)
    h = d * gens.J0 + lam * gens.Jplus + np.conj(lam) * gens.Jminus
    w = hermitian_eigenvalues(h)
    two_j = int(round(2 * j))
    mu = -0.5 * two_j + np.arange(two_j + 1)
    analytic = math.sqrt(d * d + 4 * abs(lam) ** 2) * mu
    labels = {"d": d, "lambda": [lam.real, lam.imag], "j": two_j / 2}
    return SpectrumResult(labels, w, "surrogate", analytic)


def surrogate_su11_convergence(S, delta, lam, m_nd, cutoffs=(40, 60, 80), n_levels=10):
    """Lowest levels of the su(1,1) surrogate for increasing cutoffs."""
    cutoffs = sorted(int(c) for c in cutoffs)
    levels = [surrogate_su11_spectrum(S, delta, lam, m_nd, c).low_lying(n_levels) for c in cutoffs]
    return ConvergenceReport.from_levels(cutoffs, levels)


# ---------------------------------------------------------------------------
# analytic candidates per block


def analytic_candidates(params, q_ab, q_ac, method="su11", delta_sign="paper"):
    """Closed-form values for every quantum-number assignment compatible with the block.

    Each basis state ``(n_a, n_b, n_c)`` of the block fixes one assignment:

    * ``su11``: ``(n_a, min(n_b, n_c), n_c - n_b)``
    * ``bogoliubov``: ``n_abar = 2 min(n_b, n_c)``, ``n_d = |n_c - n_b|``
    * ``normal_mode``: ``N_c = n_c`` and ``(N_1, N_2) = (n_a, n_b)``, swapped
      when ``w1 < w2``; ``w2 (n_a + n_b)`` is added back to leave the
      interaction picture
    * ``su2``: ``n_c``, ``j = q_ab/2`` and ``mu = s (n_a - n_b)/2`` with
      ``s = sign(w1 - w2)``

    so that every method reproduces the uncoupled spectrum at ``g = 0`` (the
    normal-mode levels only do so with ``delta_sign="alt"``).
    """
    states = Block(q_ab, q_ac).states
    out = []
    s = 1 if params.omega1 >= params.omega2 else -1
    for n_a, n_b, n_c in states:
        n_l = min(n_b, n_c)
        m = n_c - n_b
        if method == "su11":
            e = energy_su11(params, (n_a, n_l, m))
        elif method == "bogoliubov":
            e = energy_bogoliubov(params, n_a, 2 * n_l, abs(m))
        elif method == "normal_mode":
            n1, n2 = (n_a, n_b) if s > 0 else (n_b, n_a)
            e = energy_normal_mode(params, (n_c, n1, n2), delta_sign=delta_sign) + params.omega2 * q_ab
        elif method == "su2":
            m2 = s * (n_a - n_b)
            e = energy_su2(params, (n_c, (q_ab - m2) // 2, m2))
        else:
            raise InvalidArgument(f"unknown analytic method {method!r}")
        out.append(e)
    return out


def _sorted_values(values):
    arr = np.asarray(values, dtype=np.complex128)
    order = np.lexsort((arr.imag, arr.real))
    return arr[order]


def block_deviation(params, q_ab, q_ac, method="su11", delta_sign="paper"):
    """Max ``|exact - analytic|`` after sorting both multisets, plus a non-real flag."""
    exact = block_spectrum(params, q_ab, q_ac).eigenvalues
    cand = _sorted_values(analytic_candidates(params, q_ab, q_ac, method, delta_sign))
    nonreal = bool(np.any(cand.imag != 0))
    dev = float(np.max(np.abs(exact - cand))) if exact.size else 0.0
    return dev, nonreal, exact, cand


@dataclass
class DiscrepancyRow:
    q_ab: int
    q_ac: int
    g: float
    deviation: float
    nonreal: bool
    exact: list
    analytic: list


@dataclass
class DiscrepancyTable:
    method: str
    delta_sign: str
    rows: list
    slope: float | None  # log-log slope of the worst block deviation versus g
    block_slopes: dict

    def to_dict(self):
        return {
            "method": self.method,
            "delta_sign": self.delta_sign,
            "slope": self.slope,
            "block_slopes": [
                {"q_ab": k[0], "q_ac": k[1], "slope": v} for k, v in sorted(self.block_slopes.items())
            ],
            "rows": [
                {
                    "q_ab": r.q_ab,
                    "q_ac": r.q_ac,
                    "g": r.g,
                    "deviation": r.deviation,
                    "nonreal": r.nonreal,
                }
                for r in self.rows
            ],
        }


def loglog_slope(gs, devs):
    """Least-squares slope of ``log dev`` against ``log g`` over ``g > 0, dev > 0``."""
    gs = np.asarray(gs, dtype=float)
    devs = np.asarray(devs, dtype=float)
    keep = (gs > 0) & (devs > 0)
    if np.count_nonzero(keep) < 2:
        return None
    return float(np.polyfit(np.log(gs[keep]), np.log(devs[keep]), 1)[0])


def discrepancy_table(params, q_ab_max, q_ac_max, method="su11", g_grid=None, delta_sign="paper", workers=1):
    """Analytic-vs-exact deviations for all blocks up to the given charges.

    ``g_grid`` defaults to ``[params.g]``. Rows are ordered by (g, q_ab, q_ac)
    in the order the grid was given, independent of ``workers``.
    """
    if method not in ANALYTIC_METHODS:
        raise InvalidArgument(f"unknown analytic method {method!r}")
    if q_ab_max < 0 or q_ac_max < 0:
        raise InvalidArgument("charge ranges must be nonnegative")
    grid = [params.g] if g_grid is None else [float(g) for g in g_grid]
    keys = [(g, qa, qc) for g in grid for qa in range(q_ab_max + 1) for qc in range(q_ac_max + 1)]

    def work(key):
        g, qa, qc = key
        dev, nonreal, exact, cand = block_deviation(params.with_g(g), qa, qc, method, delta_sign)
        return DiscrepancyRow(qa, qc, g, dev, nonreal, list(exact), list(cand))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(work, keys))
    else:
        rows = [work(k) for k in keys]

    block_slopes = {}
    for qa in range(q_ab_max + 1):
        for qc in range(q_ac_max + 1):
            sel = [r for r in rows if (r.q_ab, r.q_ac) == (qa, qc)]
            block_slopes[(qa, qc)] = loglog_slope([r.g for r in sel], [r.deviation for r in sel])
    worst = [max(r.deviation for r in rows if r.g == g) for g in grid]
    return DiscrepancyTable(method, delta_sign, rows, loglog_slope(grid, worst), block_slopes)


__all__ = [
    "ConvergenceReport",
    "DiscrepancyRow",
    "DiscrepancyTable",
    "SpectrumResult",
    "analytic_candidates",
    "block_deviation",
    "block_spectrum",
    "discrepancy_table",
    "eigen_residuals",
    "hermitian_eigenvalues",
    "hermitian_eigh",
    "loglog_slope",
    "matrix_exponential",
    "surrogate_su11_convergence",
    "surrogate_su11_spectrum",
    "surrogate_su2_spectrum",
]
