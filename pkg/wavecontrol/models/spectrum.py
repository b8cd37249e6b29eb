import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .. import constants as C
from .config import ConfigError, NumericalError, gamma_epsilon

log = logging.getLogger(__name__)

FAMILIES = ('lambda', 'mu', 'nu')


@dataclass(frozen=True)
class SpectralPoint:
    index: int
    value: complex

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag


def lambda_n(n, epsilon, alpha):
    """lambda_n = i n + eps |n|^(2 alpha), векторно по n."""
    n = np.asarray(n)
    return 1j * n + epsilon * np.abs(n).astype(float) ** (2 * alpha)


def eigenvalue(family, n, epsilon, alpha):
    """Собственное значение семейства lambda, mu или nu."""
    if np.any(np.asarray(n) == 0):
        raise ConfigError("Индекс n должен быть ненулевым")
    if family == 'lambda':
        return lambda_n(n, epsilon, alpha)
    if family == 'mu':
        return 1j * np.asarray(n) + 0j
    if family == 'nu':
        # Под корнем eps^2 |n|^(4 alpha) - n^2
        n = np.asarray(n)
        absn = np.abs(n).astype(float)
        root = np.sqrt(epsilon ** 2 * absn ** (4 * alpha) - absn ** 2 + 0j)
        return epsilon * absn ** (2 * alpha) + np.sign(n) * root
    raise ConfigError(f"Неизвестное семейство: {family}")


def spectral_family(family, n_max, epsilon, alpha):
    """Точки семейства для 0 < |n| <= n_max."""
    idx = [n for n in range(-n_max, n_max + 1) if n != 0]
    values = eigenvalue(family, np.array(idx), epsilon, alpha)
    return [SpectralPoint(n, complex(v)) for n, v in zip(idx, values)]


class WeightFunction:
    """Вес phi_eps и обратная к нему функция."""

    def __init__(self, epsilon, alpha):
        self.epsilon = epsilon
        self.alpha = alpha
        self.gamma = gamma_epsilon(epsilon, alpha)

    def _check(self):
        if abs(self.alpha - 0.5) < C.ALPHA_HALF_TOLERANCE:
            raise ConfigError("phi_eps не определена при alpha = 1/2")

    def __call__(self, x):
        self._check()
        x = np.abs(np.asarray(x, dtype=float))
        low = self.epsilon * x ** (2 * self.alpha)
        if self.gamma is None:
            return low
        with np.errstate(divide='ignore'):
            high = (x / self.epsilon) ** (1 / (2 * self.alpha))
        return np.where(x <= self.gamma, low, high)

    def inverse(self, y):
        self._check()
        if self.epsilon <= 0 or self.alpha <= 0:
            raise ConfigError("phi_eps необратима при eps = 0 или alpha = 0")
        y = np.asarray(y, dtype=float)
        low = (y / self.epsilon) ** (1 / (2 * self.alpha))
        if self.gamma is None:
            return low
        high = self.epsilon * y ** (2 * self.alpha)
        return np.where(y <= self.gamma, low, high)


def phi_eps(x, epsilon, alpha):
    return WeightFunction(epsilon, alpha)(x)


def phi_eps_inverse(y, epsilon, alpha):
    return WeightFunction(epsilon, alpha).inverse(y)


def xi_eps(x, epsilon, alpha):
    """Неотрицательный корень xi^2 + eps^2 xi^(4 alpha) = x^2."""
    x = float(x)
    if x <= 0:
        return 0.0
    if epsilon == 0:
        return x
    if alpha == 0:
        # xi^2 + eps^2 = x^2: неотрицательный корень есть только при x >= eps
        if x < epsilon:
            raise ConfigError(
                f"При alpha = 0 корень xi_eps существует только для "
                f"x >= eps, получено x = {x:g}, eps = {epsilon:g}")
        return math.sqrt(x * x - epsilon * epsilon)

    def equation(r):
        return r * r + epsilon ** 2 * r ** (4 * alpha) - x * x

    if equation(x) == 0:
        return x
    return brentq(equation, 0.0, x, xtol=C.XI_RTOL * x * 1e-3,
                  rtol=C.XI_RTOL, maxiter=500)


def _viscous_below(r, epsilon, alpha):
    return r > 0 and epsilon * r ** (2 * alpha) <= r


def root_map_violations(n_max, x_grid, epsilon, alpha):
    """Пары (x, n), n = 1..n_max, где неравенства для xi_eps нарушены.

    Возвращает список нарушений и число проверенных пар.
    """
    failed, checked = [], 0
    for x in x_grid:
        for n in range(1, n_max + 1):
            result = root_map_check(float(x), n, epsilon, alpha)
            if result is None:
                continue
            checked += 1
            if not result:
                failed.append((float(x), n))
    return failed, checked


def root_map_check(x, n, epsilon, alpha):
    """Неравенства для корня xi_eps в точке (x, n).

    None, если пара вне области, где они утверждаются.
    """
    xi = xi_eps(x, epsilon, alpha)
    abs_lambda = abs(complex(lambda_n(n, epsilon, alpha)))
    slack = 1e-12 * max(1.0, x, n)
    if (_viscous_below(xi, epsilon, alpha)
            and _viscous_below(n, epsilon, alpha)):
        gap = abs(xi - n) / math.sqrt(2)
        return bool(xi <= x + slack and x <= math.sqrt(2) * xi + slack
                    and abs(x - abs_lambda) >= gap - slack)
    gamma = gamma_epsilon(epsilon, alpha)
    if gamma is not None and xi > gamma and n > xi:
        rhs = (epsilon * (n ** (2 * alpha) - xi ** (2 * alpha))
               / (2 * math.sqrt(2)))
        return bool(abs_lambda - x >= rhs - slack)
    return None


def multiplier_nodes(m, epsilon, alpha, count):
    """Стартовый индекс n_m и узлы a_n = phi^{-1}(n)/e для n = n_m..n_m+count-1."""
    if alpha <= 0 or abs(alpha - 0.5) < C.ALPHA_HALF_TOLERANCE:
        raise ConfigError(
            "Мультипликатор определён только для alpha в (0,1) без 1/2")
    if epsilon <= 0:
        raise ConfigError("Мультипликатор требует eps > 0")
    weight = WeightFunction(epsilon, alpha)
    n_m = start_index(m, epsilon, alpha)
    idx = np.arange(n_m, n_m + count)
    nodes = weight.inverse(idx) / math.e
    abs_lambda = abs(complex(lambda_n(m, epsilon, alpha)))
    if nodes.size and nodes[0] < abs_lambda * (1 - 1e-12):
        raise NumericalError(
            f"a_(n_m) = {nodes[0]} < |lambda_m| = {abs_lambda}")
    return n_m, nodes


def start_index(m, epsilon, alpha):
    """n_m = A(|lambda_m|) + 1: первый узел за |lambda_m|."""
    abs_lambda = abs(complex(lambda_n(m, epsilon, alpha)))
    return int(counting_function(abs_lambda, epsilon, alpha)) + 1


def counting_function(u, epsilon, alpha):
    """A(u) = #{a_n <= u} = [phi_eps(e u)]."""
    u = np.asarray(u, dtype=float)
    return np.floor(phi_eps(math.e * u, epsilon, alpha))


def slow_roots(n_max, epsilon, alpha):
    """Медленные корни nu_(-n) системы с одним вязким членом, n = 1..n_max."""
    n = -np.arange(1, n_max + 1)
    return eigenvalue('nu', n, epsilon, alpha)


def muntz_partial_sums(n_max, epsilon, alpha):
    """Частичные суммы sum_{k <= n} Re nu_(-k) / (1 + |nu_(-k)|^2).

    Неограниченный рост (alpha >= 1/2) означает, что экспоненты
    exp(-nu t) полны и семейство не минимально.
    """
    if epsilon <= 0:
        raise ConfigError("Медленные корни определены только при eps > 0")
    nu = slow_roots(n_max, epsilon, alpha)
    return np.cumsum(nu.real / (1 + np.abs(nu) ** 2))


def _require_regular(alpha):
    if abs(alpha - 0.5) < C.ALPHA_HALF_TOLERANCE:
        raise ConfigError("Константа не определена при alpha = 1/2")


def constants_l1(epsilon, alpha):
    """Граница экспоненциального типа произведения P_m.

    При eps = 0 тип равен pi точно; добавки растут с eps и стремятся
    к бесконечности при alpha -> 1/2.
    """
    _require_regular(alpha)
    if alpha < 0.5:
        return math.pi + 4 * epsilon / (1 - 2 * alpha)
    return math.pi + 8 / (2 * alpha - 1)


def constants_l2(epsilon, alpha):
    """Граница суммы sum 1/a_n (условие I1)."""
    _require_regular(alpha)
    if alpha < 0.5:
        scale = epsilon ** (1 / (2 * alpha))
        return (4 * alpha + 1) / (2 * alpha) * scale * math.e
    return (2 * alpha + 1) / (2 * alpha - 1) * math.e


def constants_d(alpha):
    """Постоянная D условия I2 и нижней оценки |M_m(i conj(lambda_m))|."""
    _require_regular(alpha)
    if alpha < 0.5:
        return 2 ** alpha * math.e ** 2
    return 4 * alpha / (1 - alpha) * math.e ** 2


def spectrum_rows(n_max, epsilon, alpha):
    """Строки таблицы спектра: n, Re, Im, phi(|lambda_n|), a_n (или nan)."""
    rows = []
    with_nodes = (alpha > 0 and epsilon > 0
                  and abs(alpha - 0.5) >= C.ALPHA_HALF_TOLERANCE)
    weight = WeightFunction(epsilon, alpha) if abs(
        alpha - 0.5) >= C.ALPHA_HALF_TOLERANCE else None
    for point in spectral_family('lambda', n_max, epsilon, alpha):
        phi = float(weight(abs(point.value))) if weight else float('nan')
        a_n = (float(weight.inverse(abs(point.index))) / math.e
               if with_nodes else float('nan'))
        rows.append([point.index, point.real, point.imag, phi, a_n])
    log.debug("Спектр: %d точек, eps=%g, alpha=%g", len(rows), epsilon, alpha)
    return rows
