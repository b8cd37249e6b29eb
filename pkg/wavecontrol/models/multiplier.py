import logging
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.special import zeta

from .. import constants as C
from .config import ConfigError
from .spectrum import (WeightFunction, lambda_n, start_index, phi_eps,
                       constants_l2, constants_d)

log = logging.getLogger(__name__)


class MultiplierEvaluator:
    """Мультипликатор M_m(z) = prod_{n >= n_m} sin(z/a_n) / (z/a_n).

    Узлы a_n = phi_eps^{-1}(n)/e. Для порции точек множители с a_n < 2|z|
    перемножаются явно, остальные учитываются рядом
    log sinc(w) = -sum_k zeta(2k) w^(2k) / (k pi^(2k)), |w| <= 1/2,
    со степенными суммами узлов через дзета-функцию Гурвица.
    """

    def __init__(self, m, epsilon, alpha,
                 tail_tolerance=C.MULTIPLIER_TAIL_TOLERANCE,
                 max_factors=C.MULTIPLIER_MAX_FACTORS,
                 series_terms=C.MULTIPLIER_SERIES_TERMS):
        if alpha <= 0:
            raise ConfigError("При alpha = 0 мультипликатор не используется")
        if abs(alpha - 0.5) < C.ALPHA_HALF_TOLERANCE:
            raise ConfigError("Мультипликатор не определён при alpha = 1/2")
        if epsilon <= 0:
            raise ConfigError("Мультипликатор требует eps > 0")
        self.m = abs(int(m))
        self.epsilon = float(epsilon)
        self.alpha = float(alpha)
        self.tail_tolerance = tail_tolerance
        self.max_factors = max_factors
        self.series_terms = int(series_terms)
        self.weight = WeightFunction(self.epsilon, self.alpha)
        self.start = start_index(self.m, self.epsilon, self.alpha)
        self._branch = None
        if self.weight.gamma is not None:
            self._branch = int(math.floor(self.weight.gamma))
        k = np.arange(1, self.series_terms + 2)
        self._series = zeta(2 * k) / (k * math.pi ** (2 * k))
        self._sums = {}

    def nodes(self, first, last):
        """a_n для n = first..last."""
        return self.weight.inverse(np.arange(first, last + 1)) / math.e

    def power_sum(self, p, first):
        """sum_{n >= first} a_n^(-p)."""
        first = max(int(first), 1)
        key = (p, first)
        if key not in self._sums:
            self._sums[key] = self._power_sum(p, first)
        return self._sums[key]

    def _power_sum(self, p, first):
        eps, alpha = self.epsilon, self.alpha
        low_power = p / (2 * alpha)
        scale_low = math.e ** p * eps ** low_power
        if self._branch is None:
            return scale_low * float(zeta(low_power, first))
        total = 0.0
        if first <= self._branch:
            if low_power > 1:
                total += scale_low * float(
                    zeta(low_power, first) - zeta(low_power, self._branch + 1))
            else:
                # Конечная сумма через аналитическое продолжение дзета-функции
                with mpmath.workdps(30):
                    total += scale_low * float(
                        mpmath.zeta(low_power, first)
                        - mpmath.zeta(low_power, self._branch + 1))
        high_first = max(first, self._branch + 1)
        total += (math.e / eps) ** p * float(zeta(2 * alpha * p, high_first))
        return total

    def type_constant(self):
        """Экспоненциальный тип M_m: sum_{n >= n_m} 1/a_n."""
        return self.power_sum(1, self.start)

    def _tail_bound(self, last, scale):
        """Остаток ряда после series_terms членов при a_(last+1) >= 2|z|."""
        k = self.series_terms + 1
        return (self._series[-1] * np.asarray(scale, dtype=float) ** (2 * k)
                * self.power_sum(2 * k, last + 1)
                / (1 - 1 / (4 * math.pi ** 2)))

    def factor_count(self, scale):
        """Номер последнего явного множителя N для |z| <= scale."""
        last = max(self.start - 1,
                   int(math.ceil(float(self.weight(2 * math.e * scale)))))
        while (self._tail_bound(last, scale) >= self.tail_tolerance
               and last - self.start < self.max_factors):
            last = self.start + 2 * (last - self.start + 1)
        if last - self.start >= self.max_factors:
            log.warning("M_%d: достигнут предел %d множителей", self.m,
                        self.max_factors)
        return last

    def _series_tail(self, z, last):
        tail = np.zeros(z.size, dtype=complex)
        for k in range(1, self.series_terms + 1):
            tail -= (self._series[k - 1] * self.power_sum(2 * k, last + 1)
                     * z ** (2 * k))
        return tail

    def log_eval(self, z):
        """log M_m(z), граница остатка ряда и номер последнего множителя."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        order = np.argsort(np.abs(z), kind='stable')
        total = np.zeros(z.size, dtype=complex)
        bound = np.zeros(z.size)
        used = self.start - 1
        for lo in range(0, z.size, C.PRODUCT_CHUNK):
            part = order[lo:lo + C.PRODUCT_CHUNK]
            zz = z[part]
            scale = float(np.max(np.abs(zz)))
            last = self.factor_count(scale)
            logs = self._series_tail(zz, last)
            with np.errstate(divide='ignore', invalid='ignore'):
                for first in range(self.start, last + 1, C.MULTIPLIER_BLOCK):
                    stop = min(first + C.MULTIPLIER_BLOCK - 1, last)
                    w = zz[:, None] / self.nodes(first, stop)[None, :]
                    logs += np.log(np.sinc(w / np.pi)).sum(axis=1)
            total[part] = logs
            bound[part] = self._tail_bound(last, np.abs(zz))
            used = max(used, last)
        log.debug("M_%d: до %d явных множителей, |z| <= %.3g", self.m,
                  used - self.start + 1,
                  float(np.max(np.abs(z))) if z.size else 0.0)
        return total, bound, used

    def evaluate(self, z):
        logs, _, _ = self.log_eval(z)
        values = np.exp(logs)
        values[np.isneginf(logs.real)] = 0.0
        return values


def mm_eval(m, z, ev=None, epsilon=None, alpha=None):
    """Значение M_m(z); скаляр для скалярного z."""
    if ev is None:
        ev = MultiplierEvaluator(m, epsilon, alpha)
    values = ev.evaluate(z)
    if np.ndim(z) == 0:
        return complex(values[0])
    return values


@dataclass
class MultiplierReport:
    """Итог проверки свойств мультипликатора."""
    epsilon: float
    alpha: float
    rows: list = field(default_factory=list)
    decay_ok: bool = True
    lower_ok: bool = True
    majf_ok: bool = True
    node_sum_ok: bool = True
    node_tail_ok: bool = True
    max_type: float = 0.0
    l2: float = 0.0

    @property
    def passed(self):
        return (self.decay_ok and self.lower_ok and self.majf_ok
                and self.node_sum_ok and self.node_tail_ok)


def decay_bound_log(m, x, epsilon, alpha):
    """Логарифм границы -phi_eps(x) + 2 e^2 |Re lambda_m| + 1."""
    re_lambda = float(lambda_n(m, epsilon, alpha).real)
    phi = np.asarray(phi_eps(x, epsilon, alpha))
    return -phi + 2 * math.e ** 2 * abs(re_lambda) + 1


def lower_bound_check(ev):
    """|M_m(i conj(lambda_m))| >= exp(-D (1 + |Re lambda_m|))."""
    lam = complex(lambda_n(ev.m, ev.epsilon, ev.alpha))
    logs, _, _ = ev.log_eval(1j * np.conj(lam))
    floor = -constants_d(ev.alpha) * (1 + abs(lam.real))
    return bool(logs[0].real >= floor), float(logs[0].real), floor


def majf_check(m, epsilon, alpha):
    """phi_eps(e |lambda_m|) <= 2 e^2 |Re lambda_m|."""
    lam = complex(lambda_n(m, epsilon, alpha))
    return bool(float(phi_eps(math.e * abs(lam), epsilon, alpha))
                <= 2 * math.e ** 2 * abs(lam.real) * (1 + 1e-14))


def node_sum_check(epsilon, alpha, ev=None):
    """Условие I1: sum_{n >= 1} 1/a_n <= L_2."""
    ev = ev or MultiplierEvaluator(1, epsilon, alpha)
    total = ev.power_sum(1, 1)
    return bool(total <= constants_l2(epsilon, alpha)), total


def node_tail_check(m, epsilon, alpha, ev=None):
    """Условие I2: sum_{n >= n_m} 1/a_n^2 <= D (1 + |Re lambda_m|) / |lambda_m|^2."""
    ev = ev or MultiplierEvaluator(m, epsilon, alpha)
    lam = complex(lambda_n(m, epsilon, alpha))
    total = ev.power_sum(2, ev.start)
    bound = constants_d(alpha) * (1 + abs(lam.real)) / abs(lam) ** 2
    return bool(total <= bound), total, bound


def mm_property_check(m_range, epsilon, alpha, x_grid):
    """Проверка убывания на сетке, нижней оценки в i conj(lambda_m) и условий на узлы."""
    x = np.asarray(x_grid, dtype=float)
    report = MultiplierReport(epsilon, alpha, l2=constants_l2(epsilon, alpha))
    report.node_sum_ok = node_sum_check(epsilon, alpha)[0]
    for m in m_range:
        ev = MultiplierEvaluator(m, epsilon, alpha)
        logs, _, _ = ev.log_eval(x)
        bound_log = decay_bound_log(m, x, epsilon, alpha)
        ok = logs.real <= bound_log + 1e-12
        report.decay_ok &= bool(np.all(ok))
        report.lower_ok &= lower_bound_check(ev)[0]
        report.majf_ok &= majf_check(m, epsilon, alpha)
        report.node_tail_ok &= node_tail_check(m, epsilon, alpha, ev)[0]
        report.max_type = max(report.max_type, ev.type_constant())
        with np.errstate(over='ignore'):
            report.rows.extend(
                [int(m), float(xv), float(np.exp(lv.real)), float(np.exp(bv)),
                 int(flag)]
                for xv, lv, bv, flag in zip(x, logs, bound_log, ok))
    log.info("Мультипликатор eps=%g alpha=%g: свойства %s, "
             "тип %.4g <= L2 %.4g",
             epsilon, alpha, "выполнены" if report.passed else "нарушены",
             report.max_type, report.l2)
    return report


def multiplier_type(m, epsilon, alpha):
    return MultiplierEvaluator(m, epsilon, alpha).type_constant()
