import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .. import constants as C
from .config import ConfigError, NumericalError
from .spectrum import lambda_n, constants_l1
from .weierstrass import ProductEvaluator, envelope_fit
from .multiplier import MultiplierEvaluator

log = logging.getLogger(__name__)

KINDS = ('theta', 'zeta', 'sinc_limit')


def _log_sinc(w):
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.log(np.sinc(np.asarray(w, dtype=complex) / np.pi))


class EntireInterpolant:
    """Целая функция Psi_m с Psi_m(i conj(lambda_n)) = delta_mn.

    Psi_m(z) = P_m(z) (M(z) / M(i conj(lambda_m)))^omega
               sinc(delta (z - i conj(lambda_m)))^(1+k).
    Мультипликатор отсутствует при alpha = 0 или eps = 0.
    """

    def __init__(self, m, epsilon, alpha, delta=C.DEFAULT_DELTA,
                 omega=C.DEFAULT_OMEGA, decay_boost=C.DEFAULT_DECAY_BOOST,
                 product=None):
        if m == 0:
            raise ConfigError("Индекс m должен быть ненулевым")
        if delta <= 0:
            raise ConfigError("delta должно быть > 0")
        self.m = int(m)
        self.epsilon = float(epsilon)
        self.alpha = float(alpha)
        self.delta = float(delta)
        self.decay_boost = int(decay_boost)
        self.product = product or ProductEvaluator(epsilon, alpha)
        self.node = complex(self.product.node(self.m))
        self.multiplier = None
        self.omega = 0.0
        self._log_m_node = 0.0
        if self.alpha > 0 and self.epsilon > 0:
            if not float(omega).is_integer() or omega < 0:
                # M_m меняет знак на вещественной оси
                raise ConfigError(
                    f"omega должно быть целым >= 0 для целой Psi_m: {omega}")
            self.omega = int(omega)
            self.multiplier = MultiplierEvaluator(self.m, epsilon, alpha)
            log_node = self.multiplier.log_eval(self.node)[0]
            self._log_m_node = complex(log_node[0])
            if self._log_m_node.real < C.UNDERFLOW_LOG_GUARD:
                raise NumericalError(
                    f"|M_{abs(self.m)}(i conj(lambda_m))| ниже порога "
                    f"exp({C.UNDERFLOW_LOG_GUARD})")

    @property
    def multiplier_type(self):
        return self.multiplier.type_constant() if self.multiplier else 0.0

    @property
    def declared_type(self):
        """L_1 + omega type(M) + (1 + k) delta."""
        return (constants_l1(self.epsilon, self.alpha)
                + self.omega * self.multiplier_type
                + (1 + self.decay_boost) * self.delta)

    @property
    def decay_power(self):
        """Степень убывания |Psi_m(x)| на вещественной оси."""
        return 1 + self.decay_boost + (1 if self.epsilon == 0 else 0)

    def log_eval(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        logs, _, _ = self.product.log_eval(self.m, z)
        if self.multiplier is not None and self.omega:
            log_m = self.multiplier.log_eval(z)[0]
            logs = logs + self.omega * (log_m - self._log_m_node)
        logs = logs + (1 + self.decay_boost) * _log_sinc(
            self.delta * (z - self.node))
        return logs

    def __call__(self, z):
        logs = self.log_eval(z)
        with np.errstate(over='ignore', invalid='ignore'):
            values = np.exp(logs)
        values[np.isneginf(logs.real)] = 0.0
        return values


def psi_eval(m, x, interp):
    """Значение Psi_m; скаляр для скалярного аргумента."""
    if interp.m != m:
        raise ConfigError(f"Интерполянт построен для m = {interp.m}, не {m}")
    values = interp(x)
    return complex(values[0]) if np.ndim(x) == 0 else values


def symmetric_grid(half_width, step):
    """Симметричная сетка j * step, |j| <= ceil(half_width / step)."""
    count = int(math.ceil(half_width / step - 1e-9))
    return step * np.arange(-count, count + 1)


@dataclass(frozen=True)
class ThetaSamples:
    times: np.ndarray
    values: np.ndarray
    x_max: float
    x_step: float
    n_points: int
    tail_estimate: float
    outside_mass: float


def fourier_samples(interp, times, budget, support):
    """theta(t) = (1/2 pi) int Psi(x) exp(ixt) dx формулой трапеций по x.

    Шаг h <= pi / (support + margin) исключает наложение копий на сетке t;
    X_max удваивается, пока оценка хвоста не станет меньше допуска.
    """
    margin = C.ALIAS_MARGIN
    h = min(1.0 / budget.points_per_unit, math.pi / (support + margin))
    power = interp.decay_power
    if power <= 1:
        raise ConfigError("Нужен decay_boost >= 1 при eps > 0")
    x_max = budget.x_max_start
    while True:
        x = symmetric_grid(x_max, h)
        psi = interp(x)
        outer = np.abs(x) >= x_max / 2
        peak = float(np.max(np.abs(psi[outer])))
        tail = peak * x_max / (power - 1) / math.pi
        if tail < budget.tolerance:
            break
        if 2 * x_max > budget.x_max_limit:
            raise NumericalError(
                f"Бюджет квадратуры исчерпан: X_max = {x_max}, "
                f"оценка хвоста {tail:.3e} > {budget.tolerance:.1e}")
        x_max *= 2

    theta = np.empty(times.size, dtype=complex)
    block = 128
    for lo in range(0, times.size, block):
        t = times[lo:lo + block]
        theta[lo:lo + block] = np.exp(1j * np.outer(t, x)) @ psi
    theta *= h / (2 * math.pi)

    dt = times[1] - times[0]
    energy = np.abs(theta) ** 2
    total = float(np.sum(energy)) * dt
    outside = float(np.sum(energy[np.abs(times) > support])) * dt
    log.debug("theta_%d: X_max=%g, h=%.4g, %d точек, хвост %.2e", interp.m,
              x_max, h, x.size, tail)
    return ThetaSamples(times, theta, x_max, h, x.size, tail,
                        outside / total if total > 0 else 0.0)


def clip_support(times, values, noise):
    """Обнуляет отсчёты снаружи последнего |theta| > noise; возвращает полуширину."""
    above = np.nonzero(np.abs(values) > noise)[0]
    if above.size == 0:
        return np.zeros_like(values), 0.0
    lo, hi = above[0], above[-1]
    clipped = np.zeros_like(values)
    clipped[lo:hi + 1] = values[lo:hi + 1]
    return clipped, float(max(abs(times[lo]), abs(times[hi])))


def sinc_theta(m, t):
    """Предельная функция exp(imt)/(2 pi) на [-pi, pi], ноль вне отрезка."""
    t = np.asarray(t, dtype=float)
    values = np.where(np.abs(t) <= math.pi,
                      np.exp(1j * m * t) / (2 * math.pi), 0)
    return complex(values) if values.ndim == 0 else values


def trapezoid_weights(times):
    dt = times[1] - times[0]
    w = np.full(times.size, dt)
    w[0] = w[-1] = dt / 2
    return w


@dataclass(frozen=True)
class BiorthogonalFamily:
    """Отсчёты theta_m / zeta_m на общей равномерной сетке по t."""
    kind: str
    epsilon: float
    alpha: float
    times: np.ndarray
    functions: dict
    support: float
    norms: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"Неизвестный вид семейства: {self.kind}")

    @property
    def indices(self):
        return sorted(self.functions)

    @property
    def dt(self):
        return float(self.times[1] - self.times[0])

    @property
    def weights(self):
        return trapezoid_weights(self.times)

    def function(self, m):
        try:
            return self.functions[m]
        except KeyError:
            raise ConfigError(
                f"В семействе нет функции с индексом {m}") from None

    def evaluate(self, m, t):
        """Значения функции в точках t (линейная интерполяция, ноль вне сетки)."""
        values = self.function(m)
        t = np.asarray(t, dtype=float)
        re = np.interp(t, self.times, values.real, left=0.0, right=0.0)
        im = np.interp(t, self.times, values.imag, left=0.0, right=0.0)
        return re + 1j * im

    def moment(self, m, rate):
        """int f_m(t) exp(rate t) dt формулой трапеций."""
        return complex(np.sum(self.weights * self.function(m)
                              * np.exp(rate * self.times)))


def sinc_family(ms, time_grid=C.DEFAULT_TIME_GRID):
    """Семейство exp(imt)/(2 pi) на [-pi, pi] с равномерной сеткой."""
    steps = int(math.ceil(2 * math.pi * time_grid))
    times = np.linspace(-math.pi, math.pi, steps + 1)
    functions = {int(m): sinc_theta(int(m), times) for m in ms}
    norm = 1 / math.sqrt(2 * math.pi)
    return BiorthogonalFamily('sinc_limit', 0.0, 0.0, times, functions,
                              math.pi, {m: norm for m in functions},
                              {'time_grid': time_grid})


def fit_omega(cfg, ms, product=None):
    """omega для Psi_m: фиксированное или по огибающей P_m с запасом."""
    if cfg.alpha == 0 or cfg.epsilon == 0:
        return 0.0
    if cfg.omega_mode == 'fixed':
        return int(cfg.omega_value)
    product = product or ProductEvaluator(cfg.epsilon, cfg.alpha)
    reach = max(C.X_MAX_START, 4 * max(abs(complex(
        lambda_n(m, cfg.epsilon, cfg.alpha))) for m in ms))
    x = symmetric_grid(reach, 1.0 / C.DEFAULT_POINTS_PER_UNIT)
    omega = 0.0
    for m in ms:
        fit, _ = envelope_fit(m, cfg.epsilon, cfg.alpha, x, product)
        omega = max(omega, fit.omega)
    omega = int(math.ceil(omega * C.OMEGA_SAFETY_FACTOR))
    log.info("omega подобрано по огибающей: %d", omega)
    return omega


def build_interpolants(cfg, ms, omega=None):
    product = ProductEvaluator(cfg.epsilon, cfg.alpha)
    if omega is None:
        omega = fit_omega(cfg, [m for m in ms if m > 0] or ms, product)
    return {m: EntireInterpolant(m, cfg.epsilon, cfg.alpha, cfg.delta, omega,
                                 cfg.decay_boost, product) for m in ms}


def theta_eval(m, interp, budget, time_grid=C.DEFAULT_TIME_GRID,
               support=None):
    """Отсчёты theta_m на [-tau - margin, tau + margin], tau - объявленный тип."""
    if interp.m != m:
        raise ConfigError(f"Интерполянт построен для m = {interp.m}, не {m}")
    support = interp.declared_type if support is None else support
    times = symmetric_grid(support + C.ALIAS_MARGIN, 1.0 / time_grid)
    return fourier_samples(interp, times, budget, support)


def theta_family(cfg, ms, omega=None):
    """Семейство theta_m; theta_(-m) = conj(theta_m) для пар индексов."""
    ms = sorted({int(m) for m in ms})
    interps = build_interpolants(cfg, sorted({abs(m) for m in ms} | set(ms)),
                                 omega)
    support = max(interps[m].declared_type for m in ms)
    times = None
    functions, norms, meta = {}, {}, {'x_max': {}, 'outside_mass': {},
                                      'effective_support': {}}
    effective = 0.0
    for m in sorted(ms, key=lambda k: (abs(k), -k)):
        if m < 0 and -m in functions:
            continue
        sample = theta_eval(m, interps[m], cfg.quad, cfg.time_grid, support)
        times = sample.times
        noise = C.SUPPORT_NOISE_FACTOR * max(
            sample.tail_estimate, 1e-15 * float(np.max(np.abs(sample.values))))
        inside = np.where(np.abs(times) <= support, sample.values, 0)
        values, width = clip_support(times, inside, noise)
        functions[m] = values
        effective = max(effective, width)
        meta['x_max'][m] = sample.x_max
        meta['outside_mass'][m] = sample.outside_mass
        meta['effective_support'][m] = width
        if -m in ms:
            functions[-m] = np.conj(values)
    w = trapezoid_weights(times)
    for m, values in functions.items():
        norms[m] = float(np.sqrt(np.sum(w * np.abs(values) ** 2)))
    meta.update(declared_type=support, omega=interps[ms[-1]].omega,
                t_tilde=2 * support, effective=effective,
                time_grid=cfg.time_grid)
    log.info("Семейство theta: %d функций, тип %.4g, носитель %.4g",
             len(functions), support, effective)
    return BiorthogonalFamily('theta', cfg.epsilon, cfg.alpha, times,
                              functions, support, norms, meta)


def triangle_kernel(times, a):
    """k_a(x) = (sqrt(2 pi) / a^2) (a - |x|)_+, int k_a = sqrt(2 pi)."""
    return math.sqrt(2 * math.pi) / a ** 2 * np.maximum(a - np.abs(times), 0.0)


def zeta_eval(m, family, a):
    """zeta_m = (theta_m * rho_m) / K_m, rho_m(x) = exp(ix Im lambda_m) k_a(x).

    K_m = int rho_m(u) exp(conj(lambda_m) u) du по той же дискретной
    сетке, так что дискретная биортогональность сохраняется.
    """
    if a <= 0:
        raise ConfigError("Полуширина ядра a должна быть > 0")
    dt = family.dt
    u = symmetric_grid(a, dt)
    lam = complex(lambda_n(m, family.epsilon, family.alpha))
    rho = np.exp(1j * u * lam.imag) * triangle_kernel(u, a)
    k_m = complex(np.sum(rho * np.exp(np.conj(lam) * u)) * dt)
    if abs(k_m) < 1e-300:
        raise NumericalError(f"Нормировка rho_{m} близка к нулю")
    smoothed = np.convolve(family.function(m), rho) * dt / k_m
    return smoothed


def zeta_family(theta, a):
    """Сглаженное семейство на [-T0/2, T0/2], T0 = T_tilde + 2a."""
    if a == 0:
        return theta
    u = symmetric_grid(a, theta.dt)
    pad = (u.size - 1) // 2
    times = theta.dt * np.arange(-(theta.times.size // 2) - pad,
                                 theta.times.size // 2 + pad + 1)
    functions = {m: zeta_eval(m, theta, a) for m in theta.indices}
    w = trapezoid_weights(times)
    norms = {m: float(np.sqrt(np.sum(w * np.abs(v) ** 2)))
             for m, v in functions.items()}
    meta = dict(theta.metadata)
    width = float(theta.metadata.get('effective', theta.support))
    meta.update(smoothing_a=a, t0=2 * theta.support + 2 * a,
                effective=width + a)
    return BiorthogonalFamily('zeta', theta.epsilon, theta.alpha, times,
                              functions, theta.support + a, norms, meta)


def biorthogonality_matrix(family, m_range, n_range):
    """B_mn = int f_m(t) exp(conj(lambda_n) t) dt и max |B - I|."""
    m_range = [int(m) for m in m_range]
    n_range = [int(n) for n in n_range]
    rates = np.conj(lambda_n(np.array(n_range), family.epsilon, family.alpha))
    kernel = np.exp(np.outer(family.times, rates)) * family.weights[:, None]
    matrix = np.array([family.function(m) @ kernel for m in m_range])
    target = np.array([[1.0 if m == n else 0.0 for n in n_range]
                       for m in m_range])
    deviation = float(np.max(np.abs(matrix - target)))
    log.info("Биортогональность (%s): max |B - I| = %.3e", family.kind,
             deviation)
    return matrix, deviation


def moment_scale(family, m_range, n_range):
    """1 + max|f_m| int_{-s}^{s} exp(|Re lambda_n| t) dt.

    s - объявленный носитель семейства. Погрешность отсчётов f_m переходит в B_mn с этим множителем.
    """
    width = float(family.support)
    re = np.abs(lambda_n(np.array([int(n) for n in n_range]),
                         family.epsilon, family.alpha).real)
    with np.errstate(over='ignore'):
        spread = np.where(re > 0, 2 * np.sinh(re * width) / np.where(
            re > 0, re, 1.0), 2 * width)
    peak = np.array([float(np.max(np.abs(family.function(int(m)))))
                     for m in m_range])
    return 1 + np.outer(peak, spread)


def scaled_deviation(family, matrix, m_range, n_range):
    """max |B_mn - delta_mn| / moment_scale."""
    target = np.array([[1.0 if int(m) == int(n) else 0.0 for n in n_range]
                       for m in m_range])
    scaled = np.abs(matrix - target) / moment_scale(family, m_range, n_range)
    return float(np.max(scaled))


def norm_growth_fit(family):
    """(C, beta): ||f_m|| <= C exp(beta |Re lambda_m|) на индексах семейства."""
    ms = family.indices
    re = np.abs(lambda_n(np.array(ms), family.epsilon, family.alpha).real)
    logs = np.log([family.norms[m] for m in ms])
    beta = 0.0
    if np.ptp(re) > 0:
        beta = max(0.0, float(np.polyfit(re, logs, 1)[0]))
    c_hat = float(np.exp(np.max(logs - beta * re)))
    return c_hat, beta


def stacked_norm_check(family, beta, trials=C.EST2_TRIALS,
                       seed=C.DEFAULT_SEED):
    """Случайные наборы c_m: int |sum c_m f_m|^2 против sum |c_m|^2 exp(2 beta |Re lambda_m|).

    Возвращает подобранную константу и границу Коши-Буняковского.
    """
    rng = np.random.default_rng(seed)
    ms = family.indices
    re = np.abs(lambda_n(np.array(ms), family.epsilon, family.alpha).real)
    stack = np.array([family.function(m) for m in ms])
    w = family.weights
    ratios = []
    for _ in range(trials):
        c = rng.standard_normal(len(ms)) + 1j * rng.standard_normal(len(ms))
        combo = c @ stack
        lhs = float(np.sum(w * np.abs(combo) ** 2))
        rhs = float(np.sum(np.abs(c) ** 2 * np.exp(2 * beta * re)))
        ratios.append(lhs / rhs)
    norms = np.array([family.norms[m] for m in ms])
    cauchy = float(np.sum(norms ** 2 * np.exp(-2 * beta * re)))
    fitted = float(max(ratios))
    log.debug("Оценка суммы: C = %.4g, граница %.4g", fitted, cauchy)
    return fitted, cauchy, np.array(ratios)
