import logging
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.linalg import eigh

from .. import constants as C
from .config import ConfigError, NumericalError
from .modal_state import (ControlSignal, exponential_cross, exponential_gram,
                          exponential_gram_form)
from .spectrum import lambda_n

log = logging.getLogger(__name__)


def moment_rhs(n, data, horizon, epsilon, alpha):
    """c_n = -exp(-conj(lambda_n) T/2) (u1_|n| + lambda_n u0_|n|) / f_|n|."""
    n = int(n)
    if n == 0:
        raise ConfigError("Индекс n должен быть ненулевым")
    lookup = {int(k): i for i, k in enumerate(data.indices)}
    if abs(n) not in lookup:
        return 0j
    f = data.profile_for([abs(n)])[0]
    lam = complex(lambda_n(n, epsilon, alpha))
    i = lookup[abs(n)]
    return complex(-np.exp(-np.conj(lam) * horizon / 2)
                   * (data.u1[i] + lam * data.u0[i]) / f)


@dataclass(frozen=True)
class MomentSystem:
    """Задача моментов int_{-T/2}^{T/2} v(t + T/2) exp(conj(lambda_n) t) dt = c_n."""
    indices: np.ndarray
    rates: np.ndarray
    horizon: float
    rhs: np.ndarray
    epsilon: float = 0.0
    alpha: float = 0.0

    @classmethod
    def from_data(cls, data, horizon, epsilon, alpha):
        modes = data.indices
        indices = np.concatenate([-modes[::-1], modes])
        rhs = np.array([moment_rhs(n, data, horizon, epsilon, alpha)
                        for n in indices])
        return cls(indices, lambda_n(indices, epsilon, alpha), float(horizon),
                   rhs, float(epsilon), float(alpha))

    def gram(self):
        half = self.horizon / 2
        return exponential_gram(self.rates, -half, half)

    def residual(self, control):
        """max |int v(t + T/2) exp(conj(lambda_n) t) dt - c_n|."""
        return float(np.max(np.abs(control_moments(control, self) - self.rhs)))


def control_moments(control, system):
    """Моменты управления против exp(conj(lambda_n)(s - T/2)) на (0, T)."""
    half = system.horizon / 2
    left = np.conj(system.rates)
    if control.exponentials is not None:
        rates, coeffs, shift = control.exponentials
        # exp(conj(l)(s - T/2)) exp(r (s - shift)) на s в (t0, t1)
        cross = exponential_cross(left, rates, control.t0, control.t1)
        scale = np.outer(np.exp(-left * half),
                         np.exp(-np.asarray(rates) * shift))
        return (cross * scale) @ np.asarray(coeffs, dtype=complex)
    kernel = np.exp(np.outer(control.times - half, left))
    return (control.weights * control.samples) @ kernel


def control_grid(horizon, time_grid):
    steps = max(2, int(math.ceil(horizon * time_grid)))
    return np.linspace(0.0, horizon, steps + 1)


def _family_width(family):
    return float(family.metadata.get('effective', family.support))


def synthesize_control_series(data, family, horizon):
    """v(s) = sum_m c_m f_m(s - T/2) на (0, T) по биортогональному семейству."""
    eps, alpha = family.epsilon, family.alpha
    width = _family_width(family)
    if horizon < 2 * width - 1e-9:
        raise ConfigError(
            f"Горизонт T = {horizon:.4g} меньше ширины носителя семейства; "
            f"для синтеза рядом нужно T >= {2 * width:.4g} (--horizon)")
    modes = data.indices
    indices = np.concatenate([-modes[::-1], modes])
    missing = [int(m) for m in indices if int(m) not in family.functions]
    if missing:
        raise ConfigError(f"В семействе нет функций для индексов {missing}")
    coeffs = np.array([moment_rhs(m, data, horizon, eps, alpha)
                       for m in indices])

    steps = max(2, int(round(horizon / family.dt)))
    times = np.linspace(0.0, horizon, steps + 1)
    samples = np.zeros(times.size, dtype=complex)
    for m, c in zip(indices, coeffs):
        if c != 0:
            samples += c * family.evaluate(int(m), times - horizon / 2)

    exponentials = None
    if family.kind == 'sinc_limit' and abs(horizon - 2 * math.pi) < 1e-12:
        # На (0, 2 pi) предельное семейство - точная сумма экспонент
        exponentials = (1j * indices.astype(float), coeffs / (2 * math.pi),
                        horizon / 2)
    control = ControlSignal(0.0, horizon, samples, data.is_real(),
                            exponentials)
    log.info("Управление рядом: ||v|| = %.6g, мнимая часть %.2e",
             control.l2_norm(), control.imag_residual())
    return control


@dataclass(frozen=True)
class GramSolution:
    control: ControlSignal
    coefficients: np.ndarray
    condition: float
    ridge: float = 0.0


def minnorm_control(system, time_grid=C.DEFAULT_TIME_GRID, ridge=0.0,
                    real_expected=True):
    """Управление минимальной нормы v(s) = sum beta_k exp(lambda_k (s - T/2)), G beta = c."""
    gram = system.gram()
    values, vectors = eigh(gram)
    smallest, largest = float(values[0]), float(values[-1])
    condition = largest / smallest if smallest > 0 else math.inf
    if ridge:
        log.warning("Регуляризация матрицы Грама: ridge = %.3g", ridge)
    elif not smallest > largest * C.GRAM_SINGULAR_THRESHOLD:
        raise NumericalError(
            f"Матрица Грама численно вырождена, cond = {condition:.3e}")
    beta = vectors @ ((vectors.conj().T @ system.rhs) / (values + ridge))
    half = system.horizon / 2
    times = control_grid(system.horizon, time_grid)
    samples = np.exp(np.outer(times - half, system.rates)) @ beta
    control = ControlSignal(0.0, system.horizon, samples, real_expected,
                            (system.rates, beta, half))
    log.info("Управление минимальной нормы: ||v|| = %.6g, cond(G) = %.3e",
             control.l2_norm(), condition)
    return GramSolution(control, beta, condition, ridge)


def gram_condition(epsilon, alpha, n_modes, horizon,
                   digits=C.GRAM_PRECISION_DIGITS):
    """cond(G) и cond нормированной матрицы (единичная диагональ) в расширенной точности."""
    with mpmath.workdps(digits):
        modes = list(range(-n_modes, 0)) + list(range(1, n_modes + 1))
        power = 2 * mpmath.mpf(alpha)
        lam = [mpmath.mpc(epsilon * mpmath.mpf(abs(n)) ** power, n)
               for n in modes]
        half = mpmath.mpf(horizon) / 2
        size = len(modes)
        gram = mpmath.matrix(size, size)
        for i in range(size):
            for k in range(size):
                s = mpmath.conj(lam[i]) + lam[k]
                gram[i, k] = (2 * half if s == 0
                              else 2 * mpmath.sinh(s * half) / s)
        scale = [1 / mpmath.sqrt(mpmath.re(gram[i, i])) for i in range(size)]
        normed = mpmath.matrix(size, size)
        for i in range(size):
            for k in range(size):
                normed[i, k] = gram[i, k] * scale[i] * scale[k]
        raw = _svd_condition(gram)
        unit = _svd_condition(normed)
    log.debug("cond(G): alpha=%g, N=%d: %.3e (норм. %.3e)", alpha, n_modes,
              raw, unit)
    return raw, unit


def _svd_condition(matrix):
    sigma = mpmath.svd_c(matrix, compute_uv=False)
    values = [abs(s) for s in sigma]
    return float(max(values) / min(values))


def gram_panel_quadrature(rates, coeffs, t0, t1, width=C.INGHAM_PANEL_WIDTH,
                          nodes=C.INGHAM_PANEL_NODES):
    """int |sum c_k exp(r_k t)|^2 dt составной формулой Гаусса-Лежандра."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    panels = max(1, int(math.ceil((t1 - t0) / width)))
    h = (t1 - t0) / panels
    starts = t0 + h * np.arange(panels)
    t = (starts[:, None] + h * (x[None, :] + 1) / 2).ravel()
    weights = np.tile(w * h / 2, panels)
    values = np.exp(np.outer(t, rates)) @ np.asarray(coeffs, dtype=complex)
    return float(np.sum(weights * np.abs(values) ** 2))


def ingham_ratio(indices, coeffs, epsilon, alpha, horizon,
                 omega_weight=C.DEFAULT_OMEGA_WEIGHT, method='gram'):
    """int_{-T}^{T} |sum b_n exp(lambda_n t)|^2 dt / sum |b_n|^2 exp(-w eps |n|^(2 alpha))."""
    coeffs = np.asarray(coeffs, dtype=complex)
    indices = np.asarray(indices)
    if not np.any(coeffs != 0):
        raise ConfigError("Все коэффициенты нулевые")
    if not horizon > 0:
        raise ConfigError("Горизонт T должен быть > 0")
    rates = lambda_n(indices, epsilon, alpha)
    if method == 'gram':
        top = exponential_gram_form(rates, coeffs, -horizon, horizon)
    elif method == 'quadrature':
        top = gram_panel_quadrature(rates, coeffs, -horizon, horizon)
    else:
        raise ConfigError(f"Неизвестный метод: {method}")
    weight = np.exp(-omega_weight * epsilon
                    * np.abs(indices).astype(float) ** (2 * alpha))
    return float(top / np.sum(np.abs(coeffs) ** 2 * weight))


def ingham_trials(n_max, epsilon, alpha, horizon, trials=C.INGHAM_TRIALS,
                  seed=C.DEFAULT_SEED, omega_weight=C.DEFAULT_OMEGA_WEIGHT):
    """Отношения Ингама для seeded случайных наборов коэффициентов на 0 < |n| <= n_max."""
    rng = np.random.default_rng(seed)
    indices = np.array([n for n in range(-n_max, n_max + 1) if n != 0])
    ratios = np.empty(trials)
    for i in range(trials):
        coeffs = rng.standard_normal(indices.size) + 1j * rng.standard_normal(
            indices.size)
        ratios[i] = ingham_ratio(indices, coeffs, epsilon, alpha, horizon,
                                 omega_weight)
    return ratios


def ingham_infimum(n_max, epsilon, alpha, horizon,
                   omega_weight=C.DEFAULT_OMEGA_WEIGHT):
    """Точная нижняя грань отношения Ингама на 0 < |n| <= n_max.

    Наименьшее собственное значение пучка G b = mu W b, где G - матрица Грама
    экспонент на (-T, T), W = diag(exp(-w eps |n|^(2 alpha))).
    """
    if not horizon > 0:
        raise ConfigError("Горизонт T должен быть > 0")
    indices = np.array([n for n in range(-n_max, n_max + 1) if n != 0])
    gram = exponential_gram(lambda_n(indices, epsilon, alpha), -horizon,
                            horizon)
    weight = np.exp(-omega_weight * epsilon
                    * np.abs(indices).astype(float) ** (2 * alpha))
    values = eigh(gram, np.diag(weight), eigvals_only=True)
    smallest = float(values[0])
    if not smallest > 0:
        raise NumericalError(
            f"Нижняя грань Ингама не положительна: {smallest:.3e}")
    log.debug("Ингам: eps=%g, alpha=%g, N=%d: inf = %.6g", epsilon, alpha,
              n_max, smallest)
    return smallest


def ingham_spread(epsilons, alpha, n_max, horizon,
                  omega_weight=C.DEFAULT_OMEGA_WEIGHT):
    """Нижние грани для каждого eps и отношение наибольшей к наименьшей."""
    minima = np.array([ingham_infimum(n_max, eps, alpha, horizon,
                                      omega_weight) for eps in epsilons])
    return minima, float(minima.max() / minima.min())


def verify_oracle_agreement(series, oracle, system):
    """Невязки моментов ряда и оракула; не больше ли норма оракула."""
    return (system.residual(series), system.residual(oracle.control),
            oracle.control.l2_norm() <= series.l2_norm() * (1 + 1e-9))
