"""Self-checks of the invariants, one named suite each.

Every suite returns a :class:`SuiteResult` with the largest measured residual
and the tolerance it was held to. ``fault=True`` corrupts one expected value
(the sign of ``[K+, K-]``) so that the harness itself can be tested.
"""

import math
import time
from typing import NamedTuple

import numpy as np

from . import algebra as alg
from . import diag, spectra, wavefn
from .fock import Block, TruncatedCube, block_indices, commutator, hamiltonian_matrix, hermiticity_residual, interior_mask
from .spectra import ModelParams


class SuiteResult(NamedTuple):
    name: str
    passed: bool
    residual: float
    tolerance: float
    seconds: float

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "seconds": self.seconds,
        }


def _max_abs(m):
    m = m.toarray() if hasattr(m, "toarray") else np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def commutation_residuals(gens, fault=False, rows=None):
    """Residuals of the three commutation relations and the Casimir identity.

    ``rows`` restricts the comparison to a subset of rows and columns (the
    interior of a truncated space).
    """
    x0, xp, xm = gens[0], gens[1], gens[2]
    sign = -1.0 if gens.group == alg.SU11 else 1.0
    if fault:
        sign = -sign
    checks = [
        commutator(x0, xp) - xp,
        commutator(x0, xm) + xm,
        commutator(xp, xm) - 2.0 * sign * x0,
        alg.casimir(gens) - alg.casimir_expected(gens),
    ]
    out = []
    for c in checks:
        c = c.toarray()
        if rows is not None:
            c = c[np.ix_(rows, rows)]
        out.append(_max_abs(c))
    return out


def _suite_algebra_su11(fault):
    worst = 0.0
    for cut in (20, 60):
        basis = alg.TwoModeTruncated(cut, cut, ("b", "c"))
        gens = alg.su11_generators(basis)
        rows = np.flatnonzero(interior_mask(basis))
        worst = max(worst, *commutation_residuals(gens, fault, rows))
    return worst, 1e-12


def _suite_algebra_su2(fault):
    worst = 0.0
    for two_j in range(0, 9):
        gens = alg.su2_multiplet(two_j / 2)
        worst = max(worst, *commutation_residuals(gens, fault))
    return worst, 1e-12


def _suite_displacement(fault):
    worst = 0.0
    xi = 0.7 * np.exp(0.4j)
    for m in (0, 2, -1):
        gens = alg.su11_sector(m, 80)
        d_exp = alg.displacement_exact(gens, xi)
        d_norm = alg.displacement_normal_order(gens, xi)
        worst = max(worst, _max_abs((d_exp - d_norm)[:12, :12]))
        k = (abs(m) + 1) / 2
        col = alg.pncs_su11(k, 1, xi, truncation=40)
        worst = max(worst, float(np.max(np.abs(col - d_exp[:41, 1]))))
    for j in (0.5, 1.5, 3):
        gens = alg.su2_multiplet(j)
        d_exp = alg.displacement_exact(gens, xi)
        worst = max(worst, _max_abs(d_exp - alg.displacement_normal_order(gens, xi)))
        for i in range(int(2 * j) + 1):
            worst = max(worst, float(np.max(np.abs(alg.pncs_su2(j, -j + i, xi) - d_exp[:, i]))))
    return worst, 1e-9


def _suite_bch(fault):
    worst = 0.0
    xi = 0.6 * np.exp(-1.1j)
    gens = alg.su11_sector(1, 100)
    for a, b in zip(alg.similarity_closed_form(gens, xi), alg.similarity_numeric(gens, xi)):
        worst = max(worst, _max_abs((a.toarray() - b)[:10, :10]))
    for j in (0.5, 2, 3.5):
        gens = alg.su2_multiplet(j)
        for a, b in zip(alg.similarity_closed_form(gens, xi), alg.similarity_numeric(gens, xi)):
            worst = max(worst, _max_abs(a.toarray() - b))
    return worst, 1e-8


def _suite_su2_surrogate(fault):
    worst = 0.0
    for two_j in range(0, 13):
        for d, lam in ((0.0, 0.3), (3.0, 2.0), (-1.2, 0.4 - 0.7j)):
            r = diag.surrogate_su2_spectrum(d, lam, two_j / 2)
            worst = max(worst, float(np.max(np.abs(r.eigenvalues - r.analytic))))
    return worst, 1e-12


def _suite_su11_surrogate(fault):
    worst = 0.0
    for ratio in (0.2, 0.5, 0.8):
        for m in (0, 1, -2):
            lam = 0.5 * ratio * 2.0 * np.exp(0.3j)
            r = diag.surrogate_su11_spectrum(2.0, 0.4, lam, m, 80)
            worst = max(worst, float(np.max(np.abs(r.low_lying(10) - r.analytic[:10]))))
    return worst, 1e-8


def _suite_reduction(fault):
    worst = 0.0
    for w1 in (0.5, 1.0, 2.0):
        for w in (1.0, 1.5):
            for g in (0.0, 0.1, 0.3):
                p = ModelParams(w1, w, w, g)
                for n_a in range(4):
                    for n_l in range(3):
                        for m in range(3):
                            a = spectra.energy_su11(p, (n_a, n_l, m))
                            b = spectra.energy_bogoliubov(p, n_a, 2 * n_l, m)
                            worst = max(worst, abs(a - b))
    for w in (0.7, 1.0):
        p = ModelParams(w, w, w, 0.0)
        for n_a in range(4):
            for n_l in range(3):
                for m in range(3):
                    worst = max(worst, abs(spectra.energy_su11(p, (n_a, n_l, m)) - w * (n_a + 2 * n_l + m)))
    return worst, 1e-12


def _suite_normal_mode(fault):
    worst = 0.0
    for w1 in (0.5, 1.0, 1.7):
        for g in (0.0, 0.2, 1.0):
            for n_c in range(5):
                c = spectra.normal_mode_coeffs(ModelParams(w1, 1.0, 1.0, g), n_c)
                worst = max(worst, abs(c.X2 + c.Y2 - 1.0))
    return worst, 1e-12


def _suite_exact_diag(fault):
    p = ModelParams(1.0, 1.3, 0.8, 0.25)
    q = 4
    cube = TruncatedCube(q, q, q)
    h = hamiltonian_matrix(p, cube)
    worst = hermiticity_residual(h)
    keep = np.concatenate([block_indices(cube, qa, qc) for qa in range(q + 1) for qc in range(q + 1)])
    sub = h.toarray()[np.ix_(keep, keep)]
    full = diag.hermitian_eigenvalues(sub)
    blocks = np.sort(np.concatenate(
        [diag.block_spectrum(p, qa, qc).eigenvalues for qa in range(q + 1) for qc in range(q + 1)]
    ))
    worst = max(worst, float(np.max(np.abs(full - blocks))))
    for qa, qc in ((2, 3), (4, 4)):
        a = diag.block_spectrum(p, qa, qc).eigenvalues
        b = diag.block_spectrum(p.with_g(-p.g), qa, qc).eigenvalues
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst, 1e-10


def _suite_wavefunctions(fault):
    grid = wavefn.polar_grid(64, 64, 9.0)
    worst = 0.0
    zeta = 0.3 * np.exp(1j * np.pi / 5)
    for n_l, m in ((0, 0), (1, 1), (2, 0)):
        closed = wavefn.pncs_wavefunction_su11(n_l, m, zeta, grid)
        series = wavefn.pncs_wavefunction_su11(n_l, m, zeta, grid, method="series")
        worst = max(worst, float(np.max(np.abs(closed.values - series.values))))
        worst = max(worst, abs(wavefn.quadrature_norm(closed, grid) - 1.0))
    for n_l, m in ((0, 1), (1, 2), (2, -2)):
        closed = wavefn.pncs_wavefunction_su2(n_l, m, zeta, grid)
        series = wavefn.pncs_series_su2(n_l, m, zeta, grid)
        worst = max(worst, float(np.max(np.abs(closed.values - series.values))))
        worst = max(worst, abs(wavefn.quadrature_norm(closed, grid) - 1.0))
    return worst, 1e-7


SUITES = {
    "algebra-su11": _suite_algebra_su11,
    "algebra-su2": _suite_algebra_su2,
    "displacement": _suite_displacement,
    "bch": _suite_bch,
    "su2-surrogate": _suite_su2_surrogate,
    "su11-surrogate": _suite_su11_surrogate,
    "reduction": _suite_reduction,
    "normal-mode": _suite_normal_mode,
    "exact-diag": _suite_exact_diag,
    "wavefunctions": _suite_wavefunctions,
}


def run_suites(only=None, fault=False):
    """Run the named suites (all by default) in registry order."""
    names = list(SUITES) if not only else [n for n in SUITES if n in set(only)]
    results = []
    for name in names:
        start = time.perf_counter()
        residual, tol = SUITES[name](fault)
        residual = float(residual)
        passed = math.isfinite(residual) and residual <= tol
        results.append(SuiteResult(name, passed, residual, tol, time.perf_counter() - start))
    return results
