import logging
import math
from dataclasses import dataclass

import numpy as np

from .. import constants as C
from .config import ConfigError
from .spectrum import lambda_n, phi_eps, constants_l1

log = logging.getLogger(__name__)


def log1p_complex(w):
    """log(1 + w) без потери точности при малых |w|."""
    w = np.asarray(w, dtype=complex)
    u, v = w.real, w.imag
    with np.errstate(divide='ignore', invalid='ignore'):
        real = 0.5 * np.log1p(2 * u + u * u + v * v)
    return real + 1j * np.arctan2(v, 1 + u)


@dataclass(frozen=True)
class ProductValue:
    """Значения P_m вместе с объявленной границей хвоста."""
    values: np.ndarray
    tail_bound: np.ndarray
    n_pairs: int


@dataclass(frozen=True)
class EnvelopeFit:
    omega: float
    c_hat: float
    satisfied: bool


class ProductEvaluator:
    """Интерполяционное произведение P_m(z) = prod_{n != m} (conj(l_n) + iz) / (conj(l_n) - conj(l_m)).

    Множители с индексами n и -n всегда объединяются в пару, произведение
    копится в логарифмах. Хвост по парам k > N суммируется формулой
    Эйлера-Маклорена; объявленная граница хвоста берётся из третьей
    разности парного члена.
    """

    def __init__(self, epsilon, alpha, tail_tolerance=C.PRODUCT_TAIL_TOLERANCE,
                 min_pairs=C.PRODUCT_MIN_PAIRS, max_pairs=C.PRODUCT_MAX_PAIRS):
        if abs(alpha - 0.5) < C.ALPHA_HALF_TOLERANCE:
            raise ConfigError("Произведение P_m не строится при alpha = 1/2")
        self.epsilon = float(epsilon)
        self.alpha = float(alpha)
        self.tail_tolerance = tail_tolerance
        self.min_pairs = min_pairs
        self.max_pairs = max_pairs
        nodes, weights = np.polynomial.legendre.leggauss(C.TAIL_PANEL_NODES)
        self._gl_nodes = (nodes + 1) / 2
        self._gl_weights = weights / 2

    def conj_eigenvalue(self, n):
        return np.conj(lambda_n(n, self.epsilon, self.alpha))

    def node(self, n):
        """Точка интерполяции i conj(lambda_n)."""
        return 1j * self.conj_eigenvalue(n)

    def _rate(self, k):
        return self.epsilon * np.asarray(k, dtype=float) ** (2 * self.alpha)

    def _pair_log(self, k, c, b):
        """log((r + c)^2 + k^2) - log((r - b)^2 + k^2), r = eps k^(2 alpha).

        Вблизи единицы отношение берётся как 1 + w, где
        w = (c + b)(2r + c - b) / den вычислено без вычитания.
        """
        r = self._rate(k)[None, :]
        den = ((r - b) ** 2 + k[None, :] ** 2)
        w = (c[:, None] + b) * (2 * r + c[:, None] - b) / den
        num = (r + c[:, None]) ** 2 + k[None, :] ** 2
        with np.errstate(divide='ignore', invalid='ignore'):
            far = np.log(num / den)
            return np.where(np.abs(w) < 0.5, log1p_complex(w), far)

    def _partial_log(self, m, c, n_pairs):
        b = complex(self.conj_eigenvalue(m))
        am = abs(m)
        total = np.zeros(c.size, dtype=complex)
        step = 4096
        for start in range(1, n_pairs + 1, step):
            k = np.arange(start, min(start + step, n_pairs + 1), dtype=float)
            k = k[k != am]
            if k.size:
                total += self._pair_log(k, c, b).sum(axis=1)
        if am <= n_pairs:
            # Остаётся только партнёр n = -m
            partner = complex(self.conj_eigenvalue(-m))
            with np.errstate(divide='ignore', invalid='ignore'):
                total += np.log((partner + c) / (partner - b))
        return total

    def _tail_log(self, m, c, n_pairs):
        """Сумма по парам k > n_pairs и её объявленная граница."""
        b = complex(self.conj_eigenvalue(m))
        edge = np.arange(n_pairs, n_pairs + 4, dtype=float)
        g_edge = self._pair_log(edge, c, b)
        correction = (g_edge[:, 1] - g_edge[:, 0]) / 24
        # Остаток после поправки порядка g''' оценивается третьей разностью
        third = (g_edge[:, 3] - 3 * g_edge[:, 2]
                 + 3 * g_edge[:, 1] - g_edge[:, 0])
        bound = np.abs(third) / C.TAIL_THIRD_DIFFERENCE_SCALE

        x0 = n_pairs + 0.5
        if self.epsilon == 0:
            rate = 1.0
        else:
            rate = max(min(1.0, abs(1 - 2 * self.alpha)), C.TAIL_DECAY_FLOOR)
        gamma = x0
        if self.alpha > 0.5 and self.epsilon > 0:
            gamma = max(x0, (1 / self.epsilon) ** (1 / (2 * self.alpha - 1)))
        span = math.log(gamma / x0) + C.TAIL_DECADES / rate
        span = min(span, math.log(1e150 / x0))
        panels = max(1, int(math.ceil(span)))
        width = span / panels
        starts = np.arange(panels)[:, None]
        y = (starts + self._gl_nodes[None, :]).ravel() * width
        w = np.tile(self._gl_weights, panels) * width
        x = x0 * np.exp(y)
        integral = self._pair_log(x, c, b) @ (w * x)
        return integral + correction, bound

    def _start_pairs(self, m, z):
        scale = float(np.max(np.abs(z))) if z.size else 0.0
        lam = abs(complex(lambda_n(m, self.epsilon, self.alpha)))
        return int(max(self.min_pairs, 4 * (scale + lam), 4 * abs(m)))

    def log_eval(self, m, z, n_pairs=None):
        """log P_m(z), граница хвоста и наибольшее использованное число пар.

        Без явного n_pairs число пар выбирается отдельно для каждой порции
        точек: старт с max(64, 4(|z| + |lambda_m|), 4|m|), затем удвоение,
        пока граница хвоста не станет меньше tol (1 + |z|).
        """
        if m == 0:
            raise ConfigError("Индекс m должен быть ненулевым")
        if n_pairs is not None and n_pairs < abs(m):
            raise ConfigError(f"Число пар {n_pairs} меньше |m| = {abs(m)}")
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        c = 1j * z

        logs = np.empty(z.size, dtype=complex)
        bounds = np.empty(z.size)
        used = 0
        for lo in range(0, z.size, C.PRODUCT_CHUNK):
            part = slice(lo, lo + C.PRODUCT_CHUNK)
            cc = c[part]
            if n_pairs is not None:
                pairs = n_pairs
                tail, bound = self._tail_log(m, cc, pairs)
            else:
                pairs = self._start_pairs(m, z[part])
                limit = self.tail_tolerance * (1 + np.abs(z[part]))
                while True:
                    tail, bound = self._tail_log(m, cc, pairs)
                    if np.all(bound < limit) or pairs >= self.max_pairs:
                        break
                    pairs = min(2 * pairs, self.max_pairs)
                if np.any(bound >= limit):
                    log.debug("P_%d: предел %d пар, граница хвоста %.3e",
                              m, pairs, float(bound.max()))
            logs[part] = self._partial_log(m, cc, pairs) + tail
            bounds[part] = bound
            used = max(used, pairs)
        return logs, bounds, used

    def evaluate(self, m, z, n_pairs=None):
        logs, bounds, used = self.log_eval(m, z, n_pairs)
        with np.errstate(over='ignore', invalid='ignore'):
            values = np.exp(logs)
        values[np.isneginf(logs.real)] = 0.0
        return ProductValue(values, bounds, used)


def pm_eval(m, z, ev, n_pairs=None):
    """Значение P_m(z); скаляр для скалярного z."""
    result = ev.evaluate(m, z, n_pairs)
    if np.ndim(z) == 0:
        return complex(result.values[0])
    return result.values


def pm_closed_form(m, z):
    """P_m при eps = 0: (-1)^m m sin(pi z) / (pi z (z - m))."""
    z = np.asarray(z, dtype=complex)
    sign = -1.0 if m % 2 else 1.0
    near = np.abs(z - m) < 0.5
    safe_far = np.where(near, 0.5 + m, z)
    safe_near = np.where(near, z, 1.0)
    far = sign * m * np.sinc(safe_far) / (safe_far - m)
    close = m * np.sinc(safe_near - m) / safe_near
    return np.where(near, close, far)


def pm_interpolation_check(m_range, n_range, ev):
    """Матрица |P_m(i conj(lambda_n)) - delta_mn| и её максимум."""
    m_range = [int(m) for m in m_range]
    n_range = [int(n) for n in n_range]
    nodes = ev.node(np.array(n_range))
    deviation = np.zeros((len(m_range), len(n_range)))
    for i, m in enumerate(m_range):
        values = ev.evaluate(m, nodes).values
        target = np.array([1.0 if n == m else 0.0 for n in n_range])
        deviation[i] = np.abs(values - target)
    worst = float(deviation.max()) if deviation.size else 0.0
    log.info("Интерполяция P_m: max отклонение %.3e", worst)
    return deviation, worst


def qm_values(ms, ev):
    """Q_m = prod |lambda_n / (lambda_n - lambda_m)| = |P_m(0)|."""
    return np.array([abs(pm_eval(int(m), 0.0, ev)) for m in ms])


def fit_qm_constant(ms, q, epsilon, alpha):
    """Наименьшее C с Q_m <= 16 exp(C eps m^(2 alpha)) на заданных m."""
    ms = np.asarray(ms, dtype=float)
    if epsilon <= 0:
        return 0.0
    excess = np.maximum(0.0, np.log(np.asarray(q) / 16.0))
    return float(np.max(excess / (epsilon * ms ** (2 * alpha))))


def qm_bound_check(m_max, epsilon, alpha, ev, holdout_from=None):
    """Таблица (m, Q_m, граница) и признак выполнения оценки.

    Константа подбирается на m < holdout_from и проверяется на остальных;
    без holdout_from подбор идёт по всей таблице.
    """
    ms = np.arange(1, m_max + 1)
    q = qm_values(ms, ev)
    fit_mask = ms < holdout_from if holdout_from else np.ones(ms.size, bool)
    c_hat = fit_qm_constant(ms[fit_mask], q[fit_mask], epsilon, alpha)
    bound = 16.0 * np.exp(c_hat * epsilon * ms.astype(float) ** (2 * alpha))
    ok = bool(np.all(q <= bound * (1 + C.BOUND_RTOL)))
    log.info("Q_m: C = %.4g, выполнено: %s", c_hat, ok)
    rows = [[int(m), float(qv), float(bv)] for m, qv, bv in zip(ms, q, bound)]
    return rows, c_hat, ok


def envelope_fit(m, epsilon, alpha, x_grid, ev):
    """Константы (omega, C) с |P_m(x)| <= C exp(omega (phi(x) + |Re lambda_m|)) на сетке."""
    x = np.asarray(x_grid, dtype=float)
    p = np.abs(ev.evaluate(m, x).values)
    if epsilon == 0:
        fit = EnvelopeFit(0.0, float(p.max()), True)
        return fit, p
    shift = np.asarray(phi_eps(x, epsilon, alpha)) + abs(
        float(lambda_n(m, epsilon, alpha).real))
    inner = shift <= 1
    c_hat = max(1.0, float(p[inner].max())) if np.any(inner) else 1.0
    with np.errstate(divide='ignore'):
        ratio = (np.log(p) - math.log(c_hat)) / shift
    omega = max(0.0, float(np.max(ratio[~inner]))) if np.any(~inner) else 0.0
    fit = EnvelopeFit(omega, c_hat, envelope_satisfied(
        p, shift, omega, c_hat))
    log.debug("Огибающая P_%d: omega = %.4g, C = %.4g", m, omega, c_hat)
    return fit, p


def envelope_satisfied(abs_p, shift, omega, c_hat, rtol=C.BOUND_RTOL):
    bound = c_hat * np.exp(omega * np.asarray(shift))
    return bool(np.all(np.asarray(abs_p) <= bound * (1 + rtol)))


def envelope_bound(m, epsilon, alpha, x_grid, omega, c_hat):
    """C exp(omega (phi_eps(x) + |Re lambda_m|)) на сетке."""
    shift = np.asarray(phi_eps(x_grid, epsilon, alpha)) + abs(
        float(lambda_n(m, epsilon, alpha).real))
    return c_hat * np.exp(omega * shift)


def product_type_bound(epsilon, alpha):
    """Граница экспоненциального типа P_m, не зависящая от m."""
    return constants_l1(epsilon, alpha)


def majfrac_check(n, x, alpha):
    """Знак и оценка (n^(4a-2) - x^(4a-2)) / (n^2 - x^2) в точке n != x."""
    n = float(n)
    x = float(x)
    if n == x or x <= 0:
        return None
    value = (n ** (4 * alpha - 2) - x ** (4 * alpha - 2)) / (n * n - x * x)
    if alpha < 0.5:
        return value <= 0.0
    return value <= max(n, x) ** (4 * alpha - 4) * (1 + 1e-12)
