import math

import numpy as np
import pytest

from wavecontrol import constants as C
from wavecontrol.models.biorthogonal import sinc_family
from wavecontrol.models.config import ConfigError, NumericalError
from wavecontrol.models.modal_state import ControlSignal, ModalState
from wavecontrol.models.moment import (MomentSystem, control_grid,
                                       control_moments, gram_condition,
                                       ingham_infimum, ingham_ratio,
                                       ingham_spread,
                                       ingham_trials, minnorm_control,
                                       moment_rhs, synthesize_control_series,
                                       verify_oracle_agreement)


def test_moment_rhs_resonant(resonant_data):
    # c_(+-1) = -exp(+-i pi) (0 + (+-i) pi/2) / (pi/2) = +-i
    assert moment_rhs(1, resonant_data, 2 * math.pi, 0.0, 0.0) == \
        pytest.approx(1j)
    assert moment_rhs(-1, resonant_data, 2 * math.pi, 0.0, 0.0) == \
        pytest.approx(-1j)
    assert moment_rhs(2, resonant_data, 2 * math.pi, 0.0, 0.0) == 0
    with pytest.raises(ConfigError):
        moment_rhs(0, resonant_data, 2 * math.pi, 0.0, 0.0)


def test_system_layout(resonant_data):
    system = MomentSystem.from_data(resonant_data, 2 * math.pi, 0.0, 0.0)
    assert system.indices.tolist() == [-1, 1]
    assert np.allclose(system.gram(), 2 * math.pi * np.eye(2))


def test_oracle_resonant_control(resonant_data):
    system = MomentSystem.from_data(resonant_data, 2 * math.pi, 0.0, 0.0)
    solution = minnorm_control(system)
    control = solution.control
    t = np.linspace(0.0, 2 * math.pi, 33)
    assert np.allclose(control.evaluate(t), np.sin(t) / math.pi, atol=1e-12)
    assert control.l2_norm() ** 2 == pytest.approx(1 / math.pi)
    assert solution.condition == pytest.approx(1.0)
    assert system.residual(control) <= 1e-13
    assert control.imag_residual() < 1e-14


def test_series_resonant_control(resonant_data):
    family = sinc_family([-1, 1])
    control = synthesize_control_series(resonant_data, family, 2 * math.pi)
    assert np.allclose(control.samples, np.sin(control.times) / math.pi,
                       atol=1e-6)
    assert control.exponentials is not None


def test_series_rejects_short_horizon(resonant_data):
    family = sinc_family([-1, 1])
    with pytest.raises(ConfigError, match=r"T >= 6\.283"):
        synthesize_control_series(resonant_data, family, math.pi)
    with pytest.raises(ConfigError):
        data = ModalState.from_coefficients([1.0, 1.0], [0.0, 0.0],
                                            [1.0, 1.0])
        synthesize_control_series(data, family, 2 * math.pi)


def test_oracle_not_longer_than_series():
    data = ModalState.from_coefficients([1.0, 0.25], [1.0, 0.125],
                                        [1.0, 1.0])
    system = MomentSystem.from_data(data, 2 * math.pi, 0.0, 0.0)
    oracle = minnorm_control(system)
    series = synthesize_control_series(data, sinc_family([-2, -1, 1, 2]),
                                       2 * math.pi)
    series_res, oracle_res, smaller = verify_oracle_agreement(
        series, oracle, system)
    assert oracle_res < 1e-12
    assert series_res < 1e-6
    assert smaller


def test_sampled_moments_follow_trapezoid():
    system = MomentSystem(np.array([1]), np.array([1j]), 2 * math.pi,
                          np.array([0j]))
    control = ControlSignal(0.0, 2 * math.pi, np.ones(101))
    moment = control_moments(control, system)[0]
    # int_0^{2 pi} exp(-i (s - pi)) ds = 0
    assert abs(moment) < 1e-12


def test_singular_gram_refused():
    rates = np.array([1j, 1j + 1e-14])
    system = MomentSystem(np.array([1, 2]), rates, 2 * math.pi,
                          np.array([1.0, 1.0]))
    with pytest.raises(NumericalError):
        minnorm_control(system)
    assert minnorm_control(system, ridge=1e-3).ridge == 1e-3


def test_control_grid():
    grid = control_grid(2 * math.pi, 4)
    assert grid[0] == 0 and grid[-1] == pytest.approx(2 * math.pi)
    assert grid.size == 27


def test_gram_condition_without_viscosity():
    raw, unit = gram_condition(0.0, 0.25, 4, 2 * math.pi, digits=30)
    assert raw == pytest.approx(1.0, abs=1e-12)
    assert unit == pytest.approx(1.0, abs=1e-12)


@pytest.mark.slow
def test_half_is_worst_conditioned():
    conds = {}
    for alpha in (0.25, 0.5):
        conds[alpha] = [gram_condition(C.DEGENERACY_EPSILON, alpha, n,
                                       2 * math.pi)[1] for n in (4, 8, 12)]
    assert np.all(np.diff(conds[0.5]) > 0)
    assert conds[0.5][-1] > conds[0.25][-1]


def test_ingham_single_exponential():
    # int_{-pi}^{pi} |exp(i t)|^2 dt = 2 pi
    ratio = ingham_ratio([1], [1.0], 0.0, 0.25, math.pi)
    assert ratio == pytest.approx(2 * math.pi)


def test_ingham_homogeneity():
    idx = [-2, -1, 1, 2]
    coeffs = np.array([1.0, -2.0j, 0.5, 1.0 + 1.0j])
    base = ingham_ratio(idx, coeffs, 0.1, 0.25, math.pi)
    scaled = ingham_ratio(idx, 3.7j * coeffs, 0.1, 0.25, math.pi)
    assert scaled == pytest.approx(base, rel=1e-12)


def test_ingham_arguments():
    with pytest.raises(ConfigError):
        ingham_ratio([1], [0.0], 0.1, 0.25, math.pi)
    with pytest.raises(ConfigError):
        ingham_ratio([1], [1.0], 0.1, 0.25, 0.0)
    with pytest.raises(ConfigError):
        ingham_ratio([1], [1.0], 0.1, 0.25, 1.0, method='simpson')


def test_ingham_gram_matches_quadrature():
    idx = np.array([n for n in range(-6, 7) if n])
    coeffs = np.random.default_rng(7).standard_normal(idx.size) + 0j
    by_gram = ingham_ratio(idx, coeffs, 0.01, 0.25, 3 * math.pi)
    by_quad = ingham_ratio(idx, coeffs, 0.01, 0.25, 3 * math.pi,
                           method='quadrature')
    assert abs(by_gram - by_quad) <= C.INGHAM_AGREEMENT_TOLERANCE * by_gram


def test_ingham_trials_are_seeded():
    first = ingham_trials(4, 0.01, 0.25, 3 * math.pi, trials=5, seed=3)
    second = ingham_trials(4, 0.01, 0.25, 3 * math.pi, trials=5, seed=3)
    assert np.array_equal(first, second)
    assert np.all(first > 0)


def test_ingham_infimum_of_orthogonal_exponentials():
    # exp(+-i t) ортогональны на (-pi, pi), норма^2 = 2 pi
    assert ingham_infimum(1, 0.0, 0.25, math.pi) == pytest.approx(
        2 * math.pi)
    with pytest.raises(ConfigError):
        ingham_infimum(1, 0.0, 0.25, 0.0)


@pytest.mark.parametrize("omega_weight", [0.0, 1.0, 4.0])
def test_ingham_trials_stay_above_infimum(omega_weight):
    infimum = ingham_infimum(4, 0.01, 0.25, 3 * math.pi, omega_weight)
    ratios = ingham_trials(4, 0.01, 0.25, 3 * math.pi, trials=50,
                           omega_weight=omega_weight)
    assert infimum > 0
    assert np.all(ratios >= infimum * (1 - C.INGHAM_INFIMUM_RTOL))


@pytest.mark.parametrize("alpha", [0.25, 0.75])
def test_ingham_spread_is_bounded(alpha):
    minima, spread = ingham_spread(C.INGHAM_EPSILONS, alpha, C.INGHAM_MODES,
                                   C.INGHAM_HORIZON)
    assert minima.size == len(C.INGHAM_EPSILONS)
    assert 1.0 <= spread <= C.INGHAM_SPREAD_LIMIT
