import itertools
import math

import pytest
from hypothesis import given, strategies as st

from tc3 import spectra as sp
from tc3.errors import DomainError, InvalidArgument, MethodInapplicable
from tc3.spectra import ModelParams


def test_model_params_validation():
    with pytest.raises(InvalidArgument):
        ModelParams(0, 1, 1, 0.1)
    with pytest.raises(InvalidArgument):
        ModelParams(1, 1, 1, math.nan)


def test_bogoliubov_params():
    assert sp.bogoliubov_params(ModelParams(1, 2, 2, 1), 0) == (0.0, True)
    assert sp.bogoliubov_params(ModelParams(1, 2, 2, 1), 1).r == pytest.approx(0.5 * math.log(3))
    assert sp.bogoliubov_params(ModelParams(1, 1, 1, 1), 1).domain_ok is False
    with pytest.raises(MethodInapplicable):
        sp.bogoliubov_params(ModelParams(1, 1, 2, 1), 1)


def test_energy_bogoliubov():
    p = ModelParams(1.5, 1.5, 1.5, 0.0)
    assert sp.energy_bogoliubov(p, 2, 1, 3) == pytest.approx(1.5 * 6)
    assert sp.energy_bogoliubov(ModelParams(1, 2, 2, 1), 1, 0, 0) == pytest.approx(math.sqrt(3) - 1)
    value = sp.energy_bogoliubov(ModelParams(1, 1, 1, 2), 1, 0, 0)
    assert sp.is_nonreal(value)
    with pytest.raises(MethodInapplicable):
        sp.energy_bogoliubov(ModelParams(1, 1, 2, 1), 1, 0, 0)


def test_energy_su11_examples():
    assert sp.energy_su11(ModelParams(1, 2, 3, 0.5), (1, 0, 1)) == pytest.approx(math.sqrt(24) - 1)
    assert sp.energy_su11(ModelParams(0.8, 0.8, 0.8, 0), (2, 1, 3)) == pytest.approx(0.8 * 7)
    assert sp.is_nonreal(sp.energy_su11(ModelParams(1, 1, 1, 2), (1, 0, 0)))
    assert not sp.is_nonreal(sp.energy_su11(ModelParams(1, 1, 1, 0.9), (1, 0, 0)))


@given(st.floats(0.1, 3), st.floats(0.1, 3), st.floats(0, 0.4), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_reduction_identity(w1, w, g, n_a, n_l, m):
    p = ModelParams(w1, w, w, g)
    a = sp.energy_su11(p, (n_a, n_l, m))
    b = sp.energy_bogoliubov(p, n_a, 2 * n_l, m)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@given(st.floats(0.1, 3), st.floats(0.1, 3), st.floats(0.1, 3), st.floats(0, 0.3), st.integers(0, 4), st.integers(0, 4))
def test_su11_monotone_in_n_l(w1, w2, w3, g, n_a, m):
    p = ModelParams(w1, w2, w3, g)
    values = [sp.energy_su11(p, (n_a, n_l, m)) for n_l in range(4)]
    if not any(sp.is_nonreal(v) for v in values):
        assert all(b >= a for a, b in zip(values, values[1:]))


def test_tilt_params_su11():
    assert sp.tilt_params_su11(ModelParams(1, 1, 1, 0.3), 0).theta == 0
    assert sp.tilt_params_su11(ModelParams(1, 1, 1, 0.5), 1).theta == pytest.approx(math.atanh(0.5))
    assert sp.tilt_params_su11(ModelParams(1, 1, 1, 1.0), 1).domain_ok is False


@pytest.mark.parametrize(
    "w1, g, n_c, expected",
    [
        (1.0, 0.3, 2, (0.5, 0.5)),
        (4.0, 1.0, 4, (0.8, 0.2)),
        (1.5, 0.0, 3, (1.0, 0.0)),
        (0.5, 0.0, 3, (0.0, 1.0)),
        (1.0, 0.0, 0, (1.0, 0.0)),
    ],
)
def test_normal_mode_coeffs(w1, g, n_c, expected):
    c = sp.normal_mode_coeffs(ModelParams(w1, 1.0, 1.0, g), n_c)
    assert (c.X2, c.Y2) == pytest.approx(expected, abs=1e-15)


def test_normal_mode_omega():
    assert sp.normal_mode_coeffs(ModelParams(4, 1, 1, 1), 4).Omega == pytest.approx(5)


def test_normal_mode_sum_rule_grid():
    for w1, g, n_c in itertools.product([0.2, 1.0, 1.0 + 1e-9, 3.0], [0.0, 1e-6, 0.5, 2.0], range(6)):
        c = sp.normal_mode_coeffs(ModelParams(w1, 1.0, 1.0, g), n_c)
        assert abs(c.X2 + c.Y2 - 1) <= 1e-12


def test_energy_normal_mode_examples():
    p = ModelParams(1, 1, 2.5, 0.5)
    assert sp.energy_normal_mode(p, (1, 1, 0)) == pytest.approx(0.5 + 2.5)
    assert sp.energy_normal_mode(p, (3, 0, 0)) == pytest.approx(2.5 * 3)
    q = ModelParams(1, 2, 0.7, 0)
    assert sp.energy_normal_mode(q, (1, 2, 0)) == pytest.approx((2 - 1) * 2 + 0.7)
    assert sp.energy_normal_mode(q, (1, 2, 0), delta_sign="alt") == pytest.approx(0.7)
    with pytest.raises(InvalidArgument):
        sp.energy_normal_mode(q, (1, 2, 0), delta_sign="other")


def test_energy_su2_examples():
    assert sp.energy_su2(ModelParams(1, 2, 0.5, 1), (4, 0, 1)) == pytest.approx(0.5 * math.sqrt(17) + 1.5 + 2)
    assert sp.energy_su2(ModelParams(1, 2, 0.5, 1), (3, 0, 0)) == pytest.approx(1.5)
    assert sp.energy_su2(ModelParams(1, 1, 0.5, 0), (2, 1, 2)) == pytest.approx(2 * 2 + 1)
    with pytest.raises(InvalidArgument):
        sp.energy_su2(ModelParams(1, 1, 1, 0), (0, 0, -2))


def test_tilt_params_su2():
    assert sp.tilt_params_su2(ModelParams(1, 2, 1, 1), 0) == 0
    assert sp.tilt_params_su2(ModelParams(1, 1, 1, 1), 3) == pytest.approx(math.pi / 2)
    assert sp.tilt_params_su2(ModelParams(1, 2, 1, 0.5), 1) == pytest.approx(math.pi / 4)
    assert sp.tilt_params_su2(ModelParams(1, 1, 1, 0), 0) == 0


def test_expval_examples():
    assert sp.expval_su11(ModelParams(1, 1, 1, 0.3), 0, 0, 0) == pytest.approx(0, abs=1e-15)
    assert sp.expval_su11(ModelParams(1, 2, 2, 1), 1, 0, 0) == pytest.approx(math.sqrt(3) - 1)
    assert sp.expval_su2(ModelParams(1, 1, 1, 0.3), 0, 0, 0) == 0
    assert sp.expval_su2(ModelParams(1, 1, 0.6, 2), 1, 0, 1) == pytest.approx(2 + 0.6)


@pytest.mark.parametrize("g, beta, m, n", [(0.3, 1.2, 1, 2), (0.05, 0.4, -1, 0)])
def test_expval_su2_isotropic_form(g, beta, m, n):
    w = 1.3
    p = ModelParams(w, w, w, g)
    assert sp.expval_su2(p, beta, n, m) == pytest.approx(g * beta * m + w * n + w * beta ** 2)


def test_expval_su11_small_g_expansion():
    # the exact first correction is g^2|alpha|^2/(2w) per quantum; see the decisions log
    w, alpha = 1.0, 1.0
    for g in (0.02, 0.05):
        p = ModelParams(w, w, w, g)
        exact = sp.expval_su11(p, alpha, 0, 0)
        expansion = (w - g * g * alpha ** 2 / (2 * w)) + w * (alpha ** 2 - 1)
        assert abs(exact - expansion) <= (g / w) ** 4 * w


def test_matching_alpha():
    assert sp.matching_alpha(0, 1, 0.7) == 0.7
    assert sp.matching_alpha(0.6, 1, 1) == pytest.approx(1.25)
    with pytest.raises(DomainError):
        sp.matching_alpha(1.0, 1.0, 1.0)


@pytest.mark.parametrize("g, beta", [(0.1, 1.0), (0.3, 0.5), (0.6, 0.5), (0.9, 0.2)])
def test_matching_alpha_exact_matches(g, beta):
    p = ModelParams(1, 1, 1, g)
    alpha = sp.matching_alpha_exact(g, 1, beta)
    assert sp.expval_su11(p, alpha, 0, 0) == pytest.approx(sp.expval_su2(p, beta, 0, 0), abs=1e-12)


def test_matching_alpha_exact_without_solution():
    # sqrt(1 - 0.36 x) <= 1 can never reach 1 + |beta|^2 - 1 = 4
    with pytest.raises(DomainError):
        sp.matching_alpha_exact(0.6, 1, 2.0)
