import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import ProfileError, ConfigError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModalState:
    """Синус-коэффициенты начальных данных и профиля.

    Коэффициенты в ненормированной форме g_n = int_0^pi g(x) sin(nx) dx.
    """
    indices: np.ndarray
    u0: np.ndarray
    u1: np.ndarray
    profile_indices: np.ndarray
    f_hat: np.ndarray

    def __post_init__(self):
        for name in ('indices', 'profile_indices'):
            idx = np.asarray(getattr(self, name), dtype=int)
            if idx.size and (idx.min() < 1 or np.any(np.diff(idx) <= 0)):
                raise ConfigError(
                    f"{name}: индексы мод должны строго возрастать "
                    "и быть >= 1")
            object.__setattr__(self, name, idx)
        for name in ('u0', 'u1', 'f_hat'):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=complex))
        if not (self.u0.shape == self.u1.shape == self.indices.shape):
            raise ConfigError("Длины u0, u1 и списка мод не совпадают")
        if self.f_hat.shape != self.profile_indices.shape:
            raise ConfigError("Длины профиля и его индексов не совпадают")
        if np.any(self.f_hat == 0):
            bad = self.profile_indices[self.f_hat == 0]
            raise ProfileError(
                f"Коэффициенты профиля f_n равны нулю для n = {bad.tolist()}")

    @classmethod
    def from_coefficients(cls, u0, u1, f_hat):
        """Данные на модах 1..N."""
        u0 = np.atleast_1d(np.asarray(u0, dtype=complex))
        idx = np.arange(1, u0.size + 1)
        f_hat = np.atleast_1d(np.asarray(f_hat, dtype=complex))
        return cls(idx, u0, np.atleast_1d(u1), np.arange(1, f_hat.size + 1),
                   f_hat)

    @property
    def n_max(self):
        return int(self.indices.max()) if self.indices.size else 0

    def profile_for(self, indices):
        """Коэффициенты f_n для заданных мод."""
        lookup = dict(zip(self.profile_indices.tolist(), self.f_hat))
        missing = [int(n) for n in np.atleast_1d(indices)
                   if int(n) not in lookup]
        if missing:
            raise ProfileError(f"Нет коэффициента профиля для мод {missing}")
        return np.array([lookup[int(n)] for n in np.atleast_1d(indices)],
                        dtype=complex)

    def with_values(self, u0, u1):
        return ModalState(self.indices, u0, u1, self.profile_indices,
                          self.f_hat)

    def is_real(self):
        return bool(np.all(self.u0.imag == 0) and np.all(self.u1.imag == 0)
                    and np.all(self.f_hat.imag == 0))


@dataclass(frozen=True)
class ControlSignal:
    """Отсчёты управления v(t) на равномерной сетке [t0, t1].

    Если задано exponentials = (rates, coeffs, shift), то
    v(t) = sum_k coeffs_k exp(rates_k (t - shift)) точно.
    """
    t0: float
    t1: float
    samples: np.ndarray
    is_real_expected: bool = False
    exponentials: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, 'samples',
                           np.asarray(self.samples, dtype=complex))
        if self.samples.size < 2 or not self.t1 > self.t0:
            raise ConfigError(
                "Управление должно иметь >= 2 отсчёта на t1 > t0")

    @property
    def times(self):
        return np.linspace(self.t0, self.t1, self.samples.size)

    @property
    def dt(self):
        return (self.t1 - self.t0) / (self.samples.size - 1)

    @property
    def weights(self):
        """Веса формулы трапеций."""
        w = np.full(self.samples.size, self.dt)
        w[0] = w[-1] = self.dt / 2
        return w

    def l2_norm(self):
        if self.exponentials is not None:
            rates, coeffs, shift = self.exponentials
            return float(np.sqrt(abs(exponential_gram_form(
                rates, coeffs, self.t0 - shift, self.t1 - shift))))
        return float(np.sqrt(np.sum(self.weights * np.abs(self.samples) ** 2)))

    def imag_residual(self):
        return float(np.max(np.abs(self.samples.imag)))

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        if self.exponentials is not None:
            rates, coeffs, shift = self.exponentials
            return np.exp(np.multiply.outer(t - shift, rates)) @ coeffs
        return (np.interp(t, self.times, self.samples.real)
                + 1j * np.interp(t, self.times, self.samples.imag))

    @classmethod
    def zero(cls, t0, t1, n_samples):
        return cls(t0, t1, np.zeros(n_samples), True)


def exponential_cross(left, right, t0, t1):
    """int_{t0}^{t1} exp((left_n + right_k) t) dt в замкнутой форме."""
    s = np.add.outer(np.asarray(left, dtype=complex),
                     np.asarray(right, dtype=complex))
    length = t1 - t0
    # exp(s t0) (t1 - t0) phi_1(s (t1 - t0)), phi_1(w) = (e^w - 1) / w
    w = s * length
    small = np.abs(w) < 1e-8
    safe = np.where(small, 1.0, w)
    phi1 = np.where(small, 1 + w / 2, np.expm1(safe) / safe)
    return np.exp(s * t0) * length * phi1


def exponential_gram(rates, t0, t1):
    """G_nk = int_{t0}^{t1} exp(conj(r_n) t) exp(r_k t) dt."""
    rates = np.asarray(rates, dtype=complex)
    return exponential_cross(np.conj(rates), rates, t0, t1)


def exponential_gram_form(rates, coeffs, t0, t1):
    """int |sum_k c_k exp(r_k t)|^2 dt = c^H G c."""
    coeffs = np.asarray(coeffs, dtype=complex)
    return np.real(np.conj(coeffs) @ exponential_gram(rates, t0, t1) @ coeffs)


def h0_norm_sq(data):
    """Квадрат нормы в H_0: sum (n^2 |u0_n|^2 + |u1_n|^2) / |f_n|^2."""
    f = data.profile_for(data.indices)
    n = data.indices.astype(float)
    return float(np.sum((n ** 2 * np.abs(data.u0) ** 2 + np.abs(data.u1) ** 2)
                        / np.abs(f) ** 2))


def project_profile(rule, n_modes, values=None):
    """Коэффициенты профиля f_1..f_N по правилу в замкнутой форме."""
    n = np.arange(1, n_modes + 1, dtype=float)
    if rule == 'unit':
        f = np.ones(n_modes)
    elif rule == 'inverse':
        f = 1.0 / n
    elif rule == 'inverse_square':
        f = 1.0 / n ** 2
    elif rule == 'explicit':
        if values is None or len(values) < n_modes:
            raise ProfileError(
                f"Явный профиль должен содержать >= {n_modes} коэффициентов")
        f = np.asarray(values[:n_modes], dtype=complex)
    else:
        raise ProfileError(f"Неизвестное правило профиля: {rule}")
    if np.any(f == 0):
        raise ProfileError(
            "Условие f_n != 0 необходимо для разрешимости задачи моментов")
    return np.asarray(f, dtype=complex)


def initial_data(rule, n_modes, u0=None, u1=None):
    """Начальные коэффициенты (u0_n, u1_n), n = 1..N.

    decaying: u0_n = 1/n^2, u1_n = 1/n^3;
    single:   только первая мода, u0_1 = pi/2, u1_1 = 0;
    explicit: значения из конфигурации.
    """
    n = np.arange(1, n_modes + 1, dtype=float)
    if rule == 'decaying':
        return 1.0 / n ** 2, 1.0 / n ** 3
    if rule == 'single':
        first = np.zeros(n_modes)
        first[0] = np.pi / 2
        return first, np.zeros(n_modes)
    if rule == 'explicit':
        if u0 is None or len(u0) < n_modes:
            raise ConfigError(
                f"Явные данные u0 должны содержать >= {n_modes} коэффициентов")
        u1 = np.zeros(n_modes) if u1 is None else u1
        if len(u1) < n_modes:
            raise ConfigError(
                f"Явные данные u1 должны содержать >= {n_modes} коэффициентов")
        return (np.asarray(u0[:n_modes], dtype=complex),
                np.asarray(u1[:n_modes], dtype=complex))
    raise ConfigError(f"Неизвестное правило начальных данных: {rule}")
