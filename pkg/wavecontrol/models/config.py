import logging
from dataclasses import dataclass, field, replace, asdict
from typing import Optional

from .. import constants as C

log = logging.getLogger(__name__)


class WaveControlError(Exception):
    """Базовая ошибка пакета."""


class ConfigError(WaveControlError, ValueError):
    """Недопустимые параметры задачи."""


class DegenerateSpectrumError(ConfigError):
    """alpha = 1/2 на пути синтеза управления."""


class ProfileError(WaveControlError, ValueError):
    """Нулевой или отсутствующий коэффициент профиля f."""


class NumericalError(WaveControlError, ArithmeticError):
    """Не хватает бюджета квадратуры, переполнение или вырожденная система."""


@dataclass(frozen=True)
class QuadratureBudget:
    """Бюджет квадратуры для преобразования Фурье Psi_m."""
    x_max_start: float = C.X_MAX_START
    x_max_limit: float = C.X_MAX_LIMIT
    points_per_unit: int = C.DEFAULT_POINTS_PER_UNIT
    tolerance: float = C.TRANSFORM_TOLERANCE


@dataclass(frozen=True)
class ProblemConfig:
    """Единственный источник параметров эксперимента."""
    alpha: float = C.DEFAULT_ALPHA
    epsilon: float = C.DEFAULT_EPSILON
    horizon: float = C.DEFAULT_HORIZON
    n_modes: int = C.DEFAULT_MODES
    delta: float = C.DEFAULT_DELTA
    omega_mode: str = 'fitted'
    omega_value: float = C.DEFAULT_OMEGA
    decay_boost: int = C.DEFAULT_DECAY_BOOST
    quad: QuadratureBudget = field(default_factory=QuadratureBudget)
    time_grid: int = C.DEFAULT_TIME_GRID
    smoothing_a: float = C.DEFAULT_SMOOTHING_A
    profile_rule: str = C.DEFAULT_PROFILE_RULE
    gamma_eps: Optional[float] = None

    @property
    def is_half(self):
        return abs(self.alpha - 0.5) < C.ALPHA_HALF_TOLERANCE

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        """Сборка конфигурации из плоского словаря (неизвестные ключи - ошибка)."""
        data = dict(data)
        quad = data.pop('quad', None)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Неизвестные параметры: {sorted(unknown)}")
        if isinstance(quad, dict):
            data['quad'] = QuadratureBudget(**quad)
        elif quad is not None:
            data['quad'] = quad
        return cls(**data)


def gamma_epsilon(epsilon, alpha):
    """Точка ветвления gamma_eps = (1/eps)^(1/(2 alpha - 1)), только для alpha > 1/2."""
    if alpha <= 0.5 or epsilon <= 0:
        return None
    return (1.0 / epsilon) ** (1.0 / (2 * alpha - 1))


def validate_config(cfg, command=None):
    """Проверка и нормализация конфигурации.

    Возвращает новую конфигурацию с производными полями. Повторный вызов
    ничего не меняет. Для команд синтеза alpha = 1/2 запрещено.
    """
    if not 0.0 <= cfg.alpha < 1.0:
        raise ConfigError(
            f"alpha должно лежать в [0, 1), получено {cfg.alpha}")
    if not 0.0 <= cfg.epsilon < 1.0:
        raise ConfigError(
            f"epsilon должно лежать в [0, 1), получено {cfg.epsilon}")
    if not cfg.horizon > 0:
        raise ConfigError(
            f"Горизонт T должен быть > 0, получено {cfg.horizon}")
    if int(cfg.n_modes) != cfg.n_modes or cfg.n_modes < 1:
        raise ConfigError(f"n_modes должно быть >= 1, получено {cfg.n_modes}")
    if not cfg.delta > 0:
        raise ConfigError(f"delta должно быть > 0, получено {cfg.delta}")
    if cfg.omega_mode not in ('fixed', 'fitted'):
        raise ConfigError(f"Неизвестный режим omega: {cfg.omega_mode}")
    if cfg.omega_mode == 'fixed' and not (
            cfg.omega_value > 0 and float(cfg.omega_value).is_integer()):
        raise ConfigError(
            f"Фиксированное omega должно быть целым > 0: {cfg.omega_value}")
    if cfg.decay_boost < 0:
        raise ConfigError("decay_boost должно быть >= 0")
    if cfg.time_grid < 1:
        raise ConfigError("time_grid должно быть >= 1")
    if cfg.smoothing_a < 0:
        raise ConfigError("smoothing_a должно быть >= 0")
    if cfg.profile_rule not in C.PROFILE_RULES:
        raise ConfigError(f"Неизвестное правило профиля: {cfg.profile_rule}")

    if command in C.SYNTHESIS_COMMANDS:
        require_synthesis_alpha(cfg.alpha)

    alpha = 0.5 if cfg.is_half else float(cfg.alpha)
    normalized = replace(
        cfg, alpha=alpha, epsilon=float(cfg.epsilon),
        horizon=float(cfg.horizon), n_modes=int(cfg.n_modes),
        gamma_eps=gamma_epsilon(cfg.epsilon, alpha))
    log.debug("Конфигурация проверена: %s", normalized)
    return normalized


def require_synthesis_alpha(alpha):
    """Отказ от синтеза при alpha = 1/2."""
    if abs(alpha - 0.5) < C.ALPHA_HALF_TOLERANCE:
        raise DegenerateSpectrumError(
            "alpha = 1/2: семейство спектрально вырождено, система не "
            "спектрально управляема; синтез управления невозможен")
