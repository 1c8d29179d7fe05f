import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_genlaguerre, eval_hermite

from tc3 import wavefn as wf
from tc3.errors import DomainError, InvalidArgument


@pytest.mark.parametrize("n, x, expected", [(0, 0.7, 1.0), (2, 1.0, 2.0), (3, 0.5, -5.0)])
def test_hermite_examples(n, x, expected):
    assert wf.hermite(n, x) == pytest.approx(expected)


@pytest.mark.parametrize("n, a, x, expected", [(0, 3, 0.2, 1.0), (1, 1, 0.5, 1.5), (2, 0, 1.0, -0.5)])
def test_laguerre_examples(n, a, x, expected):
    assert wf.assoc_laguerre(n, a, x) == pytest.approx(expected)


@given(st.integers(0, 25), st.floats(-4, 4))
def test_hermite_matches_scipy(n, x):
    assert wf.hermite(n, x) == pytest.approx(eval_hermite(n, x), rel=1e-10, abs=1e-10)


@given(st.integers(0, 20), st.integers(0, 8), st.floats(0, 15))
def test_laguerre_matches_scipy(n, a, x):
    assert wf.assoc_laguerre(n, a, x) == pytest.approx(eval_genlaguerre(n, a, x), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("n, k", [(5, 2), (4, 4), (7, 3)])
def test_laguerre_negative_index_identity(n, k):
    x = np.linspace(0.1, 4, 9)
    lhs = wf.assoc_laguerre(n, -k, x)
    rhs = (-x) ** k * math.factorial(n - k) / math.factorial(n) * wf.assoc_laguerre(n - k, k, x)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-11, atol=1e-12)


def test_ho1d_values():
    assert wf.ho1d(0, 0.0) == pytest.approx(math.pi ** -0.25)
    assert wf.ho1d(1, 0.0) == 0
    x = np.linspace(-3, 3, 13)
    ref = (math.sqrt(math.pi) * 2 ** 4 * math.factorial(4)) ** -0.5 * np.exp(-x * x / 2) * eval_hermite(4, x)
    np.testing.assert_allclose(wf.ho1d(4, x), ref, atol=1e-14)


@pytest.mark.parametrize("n", [0, 1, 5, 20, 45])
def test_ho1d_normalized(n):
    grid = wf.cartesian_grid()
    assert wf.quadrature_norm(lambda x: wf.ho1d(n, x), grid) == pytest.approx(1, abs=1e-10)


def test_ho2d_values():
    grid = wf.polar_grid()
    assert wf.quadrature_norm(lambda r, p: wf.ho2d(0, 0, r, p), grid) == pytest.approx(1, abs=1e-8)
    assert wf.ho2d(2, 3, 0.0, 0.4) == 0
    a = wf.ho2d(0, 1, *grid.mesh())
    b = wf.ho2d(1, 1, *grid.mesh())
    assert abs(wf.overlap(a, b, grid)) <= 1e-8


def test_ho2d_orthonormal():
    grid = wf.polar_grid()
    labels = [(n, m) for n in range(4) for m in range(-3, 4)]
    funcs = [wf.ho2d(n, m, *grid.mesh()) for n, m in labels]
    gram = np.array([[wf.overlap(a, b, grid) for b in funcs] for a in funcs])
    np.testing.assert_allclose(gram, np.eye(len(labels)), atol=1e-7)


def test_quadrature_norm_examples():
    grid = wf.polar_grid()
    assert wf.quadrature_norm(lambda r, p: wf.ho2d(2, 3, r, p), grid) == pytest.approx(1, abs=1e-8)
    assert wf.quadrature_norm(np.zeros(grid.shape), grid) == 0
    assert wf.quadrature_norm(lambda x: wf.ho1d(0, x), wf.cartesian_grid()) == pytest.approx(1, abs=1e-10)


def test_quadrature_warns_on_small_grid():
    grid = wf.polar_grid(40, 8, 2.5)
    with pytest.warns(wf.AccuracyWarning, match="tail"):
        wf.quadrature_norm(lambda r, p: wf.ho2d(3, 2, r, p), grid)


def test_grid_validation():
    with pytest.raises(InvalidArgument):
        wf.polar_grid(1, 8)
    with pytest.raises(InvalidArgument):
        wf.GridSpec("cartesian", x=np.array([0.0, 0.0]))


def test_pncs_su11_zero_is_ho2d():
    grid = wf.polar_grid(32, 16)
    np.testing.assert_allclose(wf.pncs_wavefunction_su11(2, 1, 0, grid).values, wf.ho2d(2, 1, *grid.mesh()), atol=1e-12)


@pytest.mark.parametrize("n_l, m", [(0, 0), (1, 1), (3, 2), (2, -3)])
@pytest.mark.parametrize("zeta", [0.3 * np.exp(1j * np.pi / 5), -0.45 + 0.1j])
def test_pncs_su11_closed_vs_series(n_l, m, zeta):
    grid = wf.polar_grid(64, 64, 12.0)
    closed = wf.pncs_wavefunction_su11(n_l, m, zeta, grid)
    series = wf.pncs_wavefunction_su11(n_l, m, zeta, grid, method="series")
    assert np.abs(closed.values - series.values).max() <= 1e-7
    assert wf.quadrature_norm(closed, grid) == pytest.approx(1, abs=1e-6)


def test_pncs_su11_domain():
    with pytest.raises(DomainError):
        wf.pncs_wavefunction_su11(0, 0, 1.0, wf.polar_grid(8, 8))


def test_pncs_su2_zero_is_ho2d():
    grid = wf.polar_grid(32, 16)
    np.testing.assert_allclose(wf.pncs_wavefunction_su2(1, 2, 0, grid).values, wf.ho2d(1, 2, *grid.mesh()), atol=1e-12)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 3), st.integers(-3, 3), st.floats(0, 0.9), st.floats(-math.pi, math.pi))
def test_pncs_su2_matches_series(n_l, m, r, phase):
    if n_l + m / 2 < abs(m) / 2:
        return
    grid = wf.polar_grid(48, 32, 11.0)
    zeta = r * np.exp(1j * phase)
    closed = wf.pncs_wavefunction_su2(n_l, m, zeta, grid)
    series = wf.pncs_series_su2(n_l, m, zeta, grid)
    assert np.abs(closed.values - series.values).max() <= 1e-8
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert wf.quadrature_norm(closed, grid) == pytest.approx(1, abs=1e-6)


def test_samples_and_rows():
    grid = wf.polar_grid(3, 4)
    s = wf.pncs_wavefunction_su11(0, 1, 0.2j, grid)
    assert len(s.samples()) == 12
    rows = s.rows()
    assert rows.shape == (12, 5)
    np.testing.assert_allclose(rows[:, 4], rows[:, 2] ** 2 + rows[:, 3] ** 2)


@pytest.mark.parametrize("n_l, m", [(3, 0), (1, 2), (4, -4), (2, -1)])
def test_pncs_su2_negative_laguerre_terms(n_l, m):
    # terms with a negative Laguerre index carry rho^(-k); they must stay finite near the origin
    grid = wf.polar_grid(64, 64, 10.0)
    zeta = -0.6 + 0.2j
    closed = wf.pncs_wavefunction_su2(n_l, m, zeta, grid)
    series = wf.pncs_series_su2(n_l, m, zeta, grid)
    assert np.abs(closed.values - series.values).max() <= 1e-10
