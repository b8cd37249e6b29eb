import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .config import ConfigError, NumericalError
from .modal_state import ModalState

log = logging.getLogger(__name__)

SYSTEMS = ('ec_in', 'ec_in1', 'ec_in0')


def phi_functions(w):
    """phi_1(w) = (e^w - 1)/w, phi_2(w) = (e^w - 1 - w)/w^2 с рядом при малых |w|."""
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 0.1
    safe = np.where(small, 1.0, w)
    em1 = np.expm1(safe)
    phi1 = em1 / safe
    phi2 = (em1 - safe) / safe ** 2
    series1 = np.zeros_like(w)
    series2 = np.zeros_like(w)
    term = np.ones_like(w)
    for k in range(12):
        series1 += term / math.factorial(k + 1)
        series2 += term / math.factorial(k + 2)
        term = term * w
    return np.where(small, series1, phi1), np.where(small, series2, phi2)


@dataclass(frozen=True)
class ModeDynamics:
    """Мода n: u'' + 2 r u' + kappa u = f_n v.

    ec_in:  r = eps n^(2a), kappa = n^2 + eps^2 n^(4a), корни -r +- i n;
    ec_in1: r = eps n^(2a), kappa = n^2;
    ec_in0: r = 0, kappa = n^2.
    """
    n: int
    epsilon: float
    alpha: float
    system: str = 'ec_in'
    f_hat: complex = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("Номер моды должен быть >= 1")
        if self.system not in SYSTEMS:
            raise ConfigError(f"Неизвестная система: {self.system}")
        if abs(self.root_plus - self.root_minus) < 1e-8 * self.n:
            raise NumericalError(f"Кратный корень для моды {self.n}")

    @property
    def damping(self):
        if self.system == 'ec_in0':
            return 0.0
        return self.epsilon * self.n ** (2 * self.alpha)

    @property
    def stiffness(self):
        if self.system == 'ec_in':
            return self.n ** 2 + self.epsilon ** 2 * self.n ** (4 * self.alpha)
        return float(self.n ** 2)

    @property
    def root_plus(self):
        r = self.damping
        if self.system == 'ec_in1':
            return -r + np.sqrt(complex(r * r - self.n ** 2))
        return complex(-r, self.n)

    @property
    def root_minus(self):
        r = self.damping
        if self.system == 'ec_in1':
            return -r - np.sqrt(complex(r * r - self.n ** 2))
        return complex(-r, -self.n)

    def to_roots(self, u, du):
        """(u, u') -> (p+, p-), u = p+ + p-, u' = rho+ p+ + rho- p-."""
        rp, rm = self.root_plus, self.root_minus
        gap = rp - rm
        return (du - rm * u) / gap, (rp * u - du) / gap

    def from_roots(self, pp, pm):
        return pp + pm, self.root_plus * pp + self.root_minus * pm

    def energy(self, u, du):
        return self.stiffness * np.abs(u) ** 2 + np.abs(du) ** 2


def _forced_exponential(root, rates, coeffs, shift, t0, t):
    """int_{t0}^{t} exp(root (t - s)) sum_k c_k exp(r_k (s - shift)) ds."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    length = t - t0
    gap = np.asarray(rates) - root
    phi1, _ = phi_functions(np.multiply.outer(length, gap))
    # exp(root (t - t0)) exp(r_k (t0 - shift)) L phi_1((r_k - root) L)
    base = np.exp(np.multiply.outer(root * length, np.ones(gap.size))
                  + (np.asarray(rates) * (t0 - shift))[None, :])
    return (base * length[:, None] * phi1) @ np.asarray(coeffs, dtype=complex)


def _piecewise_linear_path(root, start, weight, g, h):
    """p_(j+1) = e^(rho h) p_j + weight h (g_j phi_1 + (g_(j+1) - g_j) phi_2)."""
    decay = np.exp(root * h)
    phi1, phi2 = phi_functions(root * h)
    drive = weight * h * (g[:-1] * phi1 + (g[1:] - g[:-1]) * phi2)
    steps = lfilter([1.0], [1.0, -decay], drive, zi=[decay * start])[0]
    return np.concatenate([[start], steps])


def _mode_path(dyn, u, du, control, times):
    """(u, u') моды на сетке times (times[0] - начальный момент)."""
    pp, pm = dyn.to_roots(u, du)
    t0 = times[0]
    sigma = 0.0
    if control is not None:
        sigma = dyn.f_hat / (dyn.root_plus - dyn.root_minus)
    if control is None:
        path_p = np.exp(dyn.root_plus * (times - t0)) * pp
        path_m = np.exp(dyn.root_minus * (times - t0)) * pm
    elif control.exponentials is not None:
        rates, coeffs, shift = control.exponentials
        path_p = (np.exp(dyn.root_plus * (times - t0)) * pp + sigma
                  * _forced_exponential(dyn.root_plus, rates, coeffs, shift,
                                        t0, times))
        path_m = (np.exp(dyn.root_minus * (times - t0)) * pm - sigma
                  * _forced_exponential(dyn.root_minus, rates, coeffs, shift,
                                        t0, times))
    else:
        g = control.evaluate(times)
        h = times[1] - times[0]
        path_p = _piecewise_linear_path(dyn.root_plus, pp, sigma, g, h)
        path_m = _piecewise_linear_path(dyn.root_minus, pm, -sigma, g, h)
    return dyn.from_roots(path_p, path_m), (path_p, path_m)


def mode_propagate(dyn, state, control=None, t_span=(0.0, 1.0)):
    """Точное распространение моды на t_span; управление кусочно-линейно или сумма экспонент."""
    t0, t1 = map(float, t_span)
    u, du = state
    if control is None or control.exponentials is not None:
        times = np.array([t0, t1])
    else:
        if t0 < control.t0 - 1e-12 or t1 > control.t1 + 1e-12:
            raise ConfigError("Интервал выходит за пределы управления")
        steps = max(1, int(round((t1 - t0) / control.dt)))
        times = np.linspace(t0, t1, steps + 1)
    (path_u, path_du), _ = _mode_path(dyn, u, du, control, times)
    return complex(path_u[-1]), complex(path_du[-1])


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    energy: np.ndarray
    modal_energy: np.ndarray
    root_energy: np.ndarray
    final: ModalState


def state_energy(state, epsilon, alpha, system='ec_in'):
    """E = (2/pi) sum (kappa_n |u_n|^2 + |u_n'|^2) в ненормированных коэффициентах."""
    total = 0.0
    for n, u, du in zip(state.indices, state.u0, state.u1):
        dyn = ModeDynamics(int(n), epsilon, alpha, system)
        total += float(dyn.energy(u, du))
    return 2 / math.pi * total


def simulate(cfg, data, control=None, system='ec_in', times=None):
    """Распространение всех мод; энергия на сетке и финальное состояние."""
    horizon = cfg.horizon
    if control is not None:
        if abs(control.t1 - control.t0 - horizon) > 1e-9 or control.t0 != 0:
            raise ConfigError(
                f"Управление задано на ({control.t0}, {control.t1}), "
                f"горизонт T = {horizon}")
        if times is None and control.exponentials is None:
            times = control.times
    if times is None:
        steps = max(2, int(math.ceil(horizon * cfg.time_grid)))
        times = np.linspace(0.0, horizon, steps + 1)
    profile = data.profile_for(data.indices)

    modal = np.zeros((data.indices.size, times.size))
    root = np.zeros_like(modal)
    final_u = np.empty(data.indices.size, dtype=complex)
    final_du = np.empty(data.indices.size, dtype=complex)
    for i, n in enumerate(data.indices):
        dyn = ModeDynamics(int(n), cfg.epsilon, cfg.alpha, system, profile[i])
        (u, du), (pp, pm) = _mode_path(dyn, data.u0[i], data.u1[i], control,
                                       times)
        modal[i] = dyn.energy(u, du)
        root[i] = np.abs(pp) ** 2 + np.abs(pm) ** 2
        final_u[i], final_du[i] = u[-1], du[-1]
    energy = 2 / math.pi * modal.sum(axis=0)
    final = data.with_values(final_u, final_du)
    log.debug("Симуляция %s: %d мод, E(0)=%.4g, E(T)=%.4g", system,
              data.indices.size, energy[0], energy[-1])
    return Trajectory(times, energy, modal, root, final)


def final_residual(final, initial, epsilon=0.0, alpha=0.0, system='ec_in'):
    """E(final) / E(initial); 0/0 считается нулём."""
    top = state_energy(final, epsilon, alpha, system)
    bottom = state_energy(initial, epsilon, alpha, system)
    if bottom == 0:
        return 0.0 if top == 0 else math.inf
    return top / bottom


def free_decay_envelope(dyn, times):
    """exp(-2 r t): точный закон убывания |p+|^2 + |p-|^2 без управления."""
    return np.exp(-2 * dyn.damping * np.asarray(times))
