import math

import numpy as np
import pytest

from wavecontrol import constants as C
from wavecontrol.models.biorthogonal import (BiorthogonalFamily,
                                             EntireInterpolant,
                                             biorthogonality_matrix,
                                             clip_support, fit_omega,
                                             moment_scale, norm_growth_fit,
                                             psi_eval, scaled_deviation,
                                             sinc_family, sinc_theta,
                                             stacked_norm_check,
                                             symmetric_grid, theta_eval,
                                             theta_family, trapezoid_weights,
                                             triangle_kernel, zeta_eval,
                                             zeta_family)
from wavecontrol.models.config import (ConfigError, ProblemConfig,
                                       QuadratureBudget, validate_config)
from wavecontrol.models.spectrum import lambda_n

SIGNED = [m for m in range(-C.SINC_CHECK_MAX, C.SINC_CHECK_MAX + 1) if m]


@pytest.fixture(scope='module')
def limit_family():
    return sinc_family(SIGNED)


def test_sinc_theta_support():
    assert sinc_theta(2, 0.0) == pytest.approx(1 / (2 * math.pi))
    assert sinc_theta(2, 4.0) == 0
    values = sinc_theta(1, np.array([-math.pi, math.pi]))
    assert np.allclose(values, -1 / (2 * math.pi))


def test_sinc_family_is_biorthogonal(limit_family):
    _, deviation = biorthogonality_matrix(limit_family, SIGNED, SIGNED)
    assert deviation < C.SINC_TOLERANCE


def test_sinc_family_norms(limit_family):
    c_hat, beta = norm_growth_fit(limit_family)
    assert beta == 0.0
    assert c_hat == pytest.approx(1 / math.sqrt(2 * math.pi))


def test_sinc_stacked_norm(limit_family):
    fitted, cauchy, ratios = stacked_norm_check(limit_family, 0.0, trials=10)
    assert ratios.size == 10
    assert fitted == pytest.approx(1 / (2 * math.pi), rel=1e-10)
    assert fitted <= cauchy


def test_family_lookup(limit_family):
    assert limit_family.indices == SIGNED
    with pytest.raises(ConfigError):
        limit_family.function(99)
    assert limit_family.evaluate(1, 10.0) == 0
    with pytest.raises(ConfigError):
        BiorthogonalFamily('gamma', 0.0, 0.0, np.zeros(2), {}, 1.0)


def test_symmetric_grid():
    grid = symmetric_grid(1.0, 0.25)
    assert grid.size == 9
    assert grid[0] == -1.0 and grid[-1] == 1.0


def test_triangle_kernel_mass():
    u = symmetric_grid(0.5, 0.01)
    w = np.full(u.size, 0.01)
    w[0] = w[-1] = 0.005
    mass = np.sum(w * triangle_kernel(u, 0.5))
    assert mass == pytest.approx(math.sqrt(2 * math.pi), rel=1e-12)


def test_clip_support():
    times = np.linspace(-2.0, 2.0, 5)
    values = np.array([1e-20, 0.5, 1.0, 1e-20, 1e-20])
    clipped, width = clip_support(times, values, 1e-10)
    assert clipped.tolist() == [0, 0.5, 1.0, 0, 0]
    assert width == 1.0
    empty, zero = clip_support(times, np.zeros(5), 1e-10)
    assert zero == 0.0 and not np.any(empty)


def test_interpolant_arguments():
    with pytest.raises(ConfigError):
        EntireInterpolant(0, 0.1, 0.25)
    with pytest.raises(ConfigError):
        EntireInterpolant(1, 0.1, 0.25, delta=0.0)


def test_interpolant_without_viscosity():
    interp = EntireInterpolant(2, 0.0, 0.0)
    assert interp.multiplier is None
    assert interp.declared_type == pytest.approx(
        math.pi + (1 + C.DEFAULT_DECAY_BOOST) * C.DEFAULT_DELTA)
    assert interp.decay_power == C.DEFAULT_DECAY_BOOST + 2
    with pytest.raises(ConfigError):
        psi_eval(3, 1.0, interp)


def test_interpolant_hits_nodes():
    interp = EntireInterpolant(2, 0.1, 0.25, omega=1.0)
    assert psi_eval(2, interp.node, interp) == pytest.approx(1.0, rel=1e-12)
    others = interp.product.node(np.array([-3, -2, -1, 1, 3]))
    assert np.all(np.abs(interp(others)) < 1e-14)


def test_zeta_needs_positive_width(limit_family):
    with pytest.raises(ConfigError):
        zeta_eval(1, limit_family, 0.0)
    assert zeta_family(limit_family, 0) is limit_family


@pytest.mark.slow
def test_theta_and_zeta_biorthogonality(base_config):
    ms = [-3, -2, -1, 1, 2, 3]
    theta = theta_family(base_config, ms)
    assert np.allclose(theta.function(-2), np.conj(theta.function(2)))
    _, theta_dev = biorthogonality_matrix(theta, ms, ms)
    assert theta_dev < C.BIORTHOGONALITY_TOLERANCE

    zeta = zeta_family(theta, 0.5)
    assert zeta.kind == 'zeta'
    assert zeta.metadata['smoothing_a'] == 0.5
    assert zeta.metadata['effective'] == pytest.approx(
        theta.metadata['effective'] + 0.5)
    _, zeta_dev = biorthogonality_matrix(zeta, ms, ms)
    assert zeta_dev <= 1.1 * theta_dev + 1e-6


def test_omega_must_be_integer():
    with pytest.raises(ConfigError):
        EntireInterpolant(2, 0.1, 0.25, omega=1.5)
    interp = EntireInterpolant(2, 0.1, 0.25, omega=2.0)
    assert interp.omega == 2
    # Без мультипликатора omega не используется
    assert EntireInterpolant(2, 0.0, 0.25, omega=1.5).omega == 0


def test_fitted_omega_is_integer(base_config):
    omega = fit_omega(base_config, [1, 2])
    assert isinstance(omega, int)
    assert omega >= 0


def test_moment_scale_without_viscosity(limit_family):
    ms = [-1, 1]
    scale = moment_scale(limit_family, ms, ms)
    assert np.allclose(scale, 1 + 2 * math.pi / (2 * math.pi))
    matrix, _ = biorthogonality_matrix(limit_family, ms, ms)
    assert scaled_deviation(limit_family, matrix, ms, ms) < C.SINC_TOLERANCE


@pytest.mark.slow
def test_theta_samples_of_single_interpolant():
    interp = EntireInterpolant(1, 0.1, 0.25, omega=1)
    budget = QuadratureBudget()
    sample = theta_eval(1, interp, budget, time_grid=16)
    assert sample.tail_estimate < budget.tolerance
    assert sample.outside_mass < 1e-6
    lam = complex(lambda_n(1, 0.1, 0.25))
    moment = np.sum(trapezoid_weights(sample.times) * sample.values
                    * np.exp(np.conj(lam) * sample.times))
    assert moment == pytest.approx(1.0, abs=1e-4)


@pytest.mark.slow
def test_theta_family_with_strong_viscosity():
    cfg = validate_config(ProblemConfig(alpha=0.75, epsilon=0.1, n_modes=3,
                                        horizon=2 * math.pi))
    ms = [-3, -2, -1, 1, 2, 3]
    theta = theta_family(cfg, ms)
    assert float(theta.metadata['omega']).is_integer()
    assert theta.metadata['effective'] <= theta.metadata['declared_type']
    outside = np.abs(theta.times) > theta.support
    assert all(np.all(theta.function(m)[outside] == 0) for m in ms)
    matrix, _ = biorthogonality_matrix(theta, ms, ms)
    assert scaled_deviation(theta, matrix, ms, ms) <= \
        C.BIORTHOGONALITY_TOLERANCE
