import numpy as np
import pytest

from wavecontrol import constants as C
from wavecontrol.models.config import ConfigError
from wavecontrol.models.spectrum import constants_l1
from wavecontrol.models.weierstrass import (ProductEvaluator, envelope_bound,
                                            envelope_fit, log1p_complex,
                                            majfrac_check,
                                            pm_closed_form, pm_eval,
                                            pm_interpolation_check,
                                            product_type_bound, qm_bound_check,
                                            qm_values)


@pytest.fixture(scope='module')
def wave_product():
    return ProductEvaluator(0.0, 0.25)


@pytest.mark.parametrize("m", [1, 2, 5])
def test_product_matches_closed_form(m, wave_product):
    x = np.linspace(-20.0, 20.0, 161)
    values = pm_eval(m, x, wave_product)
    assert np.allclose(values, pm_closed_form(m, x), rtol=1e-8, atol=1e-8)


def test_product_scalar_value(wave_product):
    assert pm_eval(3, 3.0, wave_product) == pytest.approx(1.0)
    assert abs(pm_eval(3, 2.0, wave_product)) < 1e-14


@pytest.mark.parametrize("epsilon, alpha", [(0.1, 0.25), (0.1, 0.75)])
def test_interpolation_at_nodes(epsilon, alpha):
    ev = ProductEvaluator(epsilon, alpha)
    idx = [-3, -2, -1, 1, 2, 3]
    deviation, worst = pm_interpolation_check(idx, idx, ev)
    assert deviation.shape == (6, 6)
    assert worst < 1e-10


def test_invalid_product_arguments():
    with pytest.raises(ConfigError):
        ProductEvaluator(0.1, 0.5)
    ev = ProductEvaluator(0.1, 0.25)
    with pytest.raises(ConfigError):
        ev.log_eval(0, [1.0])
    with pytest.raises(ConfigError):
        ev.log_eval(5, [1.0], n_pairs=4)


def test_qm_without_viscosity_is_one(wave_product):
    q = qm_values(range(1, 6), wave_product)
    assert np.allclose(q, 1.0, rtol=1e-8)


def test_qm_fitted_bound_holds():
    ev = ProductEvaluator(0.1, 0.25)
    rows, c_hat, ok = qm_bound_check(16, 0.1, 0.25, ev)
    assert ok
    assert c_hat >= 0
    assert [row[0] for row in rows] == list(range(1, 17))


def test_envelope_fit_covers_samples():
    ev = ProductEvaluator(0.1, 0.25)
    x = np.arange(-40.0, 40.25, 0.25)
    fit, p = envelope_fit(2, 0.1, 0.25, x, ev)
    assert fit.satisfied
    bound = envelope_bound(2, 0.1, 0.25, x, fit.omega, fit.c_hat)
    assert np.all(p <= bound * (1 + 1e-12))


def test_envelope_without_viscosity(wave_product):
    x = np.arange(-10.0, 10.5, 0.5)
    fit, p = envelope_fit(1, 0.0, 0.25, x, wave_product)
    assert fit.omega == 0.0
    assert fit.c_hat == pytest.approx(p.max())


def test_type_bound():
    assert product_type_bound(0.1, 0.25) == constants_l1(0.1, 0.25)


def test_majfrac_sign():
    assert majfrac_check(2, 3, 0.25)
    assert majfrac_check(2, 3, 0.75)
    assert majfrac_check(2, 2, 0.25) is None


def test_log1p_keeps_small_arguments():
    w = np.array([1e-20 + 1e-20j, -3e-17 + 0j, 0.25 - 0.1j])
    values = log1p_complex(w)
    assert values[0] == pytest.approx(1e-20 + 1e-20j, rel=1e-12)
    assert values[1] == pytest.approx(-3e-17, rel=1e-12)
    assert values[2] == pytest.approx(np.log(1.25 - 0.1j), rel=1e-14)


def test_product_tail_without_viscosity(wave_product):
    # Хвост пар с большими номерами не должен съедать точность
    for n_pairs in (64, 1024):
        logs, _, _ = wave_product.log_eval(1, [0.5], n_pairs=n_pairs)
        expected = pm_closed_form(1, np.array([0.5]))[0]
        assert np.exp(logs[0]) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("m", [1, 3])
def test_product_continuous_as_viscosity_vanishes(m):
    x = np.linspace(-12.0, 12.0, 97)
    values = pm_eval(m, x, ProductEvaluator(1e-8, 0.25))
    assert np.allclose(values, pm_closed_form(m, x), atol=1e-5)


@pytest.mark.parametrize("alpha", [0.25, 0.75])
def test_interpolation_with_large_viscosity(alpha):
    ev = ProductEvaluator(0.5, alpha)
    idx = [-3, -2, -1, 1, 2, 3]
    _, worst = pm_interpolation_check(idx, idx, ev)
    assert worst <= C.INTERPOLATION_TOLERANCE


def test_qm_bound_at_fitted_maximum():
    # Граница совпадает с Q_m в точке максимума подгонки
    ev = ProductEvaluator(0.1, 0.75)
    _, _, ok = qm_bound_check(16, 0.1, 0.75, ev)
    assert ok


@pytest.mark.slow
@pytest.mark.parametrize("epsilon", [0.1, 0.5])
@pytest.mark.parametrize("alpha", [0.25, 0.75])
def test_qm_bound_holds_on_holdout(epsilon, alpha):
    ev = ProductEvaluator(epsilon, alpha)
    rows, _, ok = qm_bound_check(C.QM_HOLDOUT_MAX, epsilon, alpha, ev,
                                 holdout_from=C.QM_FIT_MAX + 1)
    assert ok
    assert len(rows) == C.QM_HOLDOUT_MAX
