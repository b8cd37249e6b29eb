from dataclasses import dataclass, field, replace
from typing import Optional

from .. import constants as C
from .config import ConfigError, ProblemConfig, validate_config
from .modal_state import ModalState, initial_data, project_profile
from .pde import SYSTEMS


@dataclass(frozen=True)
class ExperimentSpec:
    """Команда, базовая конфигурация, оси развёртки и данные."""
    command: str
    config: ProblemConfig = field(default_factory=ProblemConfig)
    epsilons: tuple = tuple(C.SWEEP_EPSILONS)
    alphas: tuple = tuple(C.DEGENERACY_ALPHAS)
    modes: tuple = tuple(C.DEGENERACY_MODES)
    horizons: tuple = ()
    data_rule: str = C.DEFAULT_DATA_RULE
    u0: Optional[tuple] = None
    u1: Optional[tuple] = None
    profile_values: Optional[tuple] = None
    out_dir: str = C.RESULTS_DIR
    seed: int = C.DEFAULT_SEED
    synthesis: str = C.DEFAULT_SYNTHESIS_PATH
    system: str = C.DEFAULT_SYSTEM
    ridge: float = 0.0
    degeneracy_epsilon: float = C.DEGENERACY_EPSILON
    ingham_epsilons: tuple = tuple(C.INGHAM_EPSILONS)
    ingham_modes: int = C.INGHAM_MODES
    ingham_horizon: float = C.INGHAM_HORIZON
    ingham_trials: int = C.INGHAM_TRIALS
    ingham_omega: Optional[float] = None
    check_m_max: int = C.CHECK_M_MAX
    qm_fit_max: int = C.QM_FIT_MAX
    qm_holdout_max: int = C.QM_HOLDOUT_MAX
    interpolation_tolerance: float = C.INTERPOLATION_TOLERANCE

    def __post_init__(self):
        for name in ('epsilons', 'alphas', 'modes', 'ingham_epsilons'):
            values = tuple(getattr(self, name))
            if not values:
                raise ConfigError(f"Список {name} не должен быть пустым")
            object.__setattr__(self, name, values)
        object.__setattr__(self, 'horizons', tuple(self.horizons))
        if self.data_rule not in C.DATA_RULES:
            raise ConfigError(
                f"Неизвестное правило начальных данных: {self.data_rule}")
        if self.synthesis not in C.SYNTHESIS_PATHS:
            raise ConfigError(f"Неизвестный путь синтеза: {self.synthesis}")
        if self.system not in SYSTEMS:
            raise ConfigError(f"Неизвестная система: {self.system}")
        if self.ridge < 0:
            raise ConfigError("ridge должно быть >= 0")
        if self.ingham_trials < 1 or self.ingham_modes < 1:
            raise ConfigError(
                "Число испытаний и мод для Ингама должно быть >= 1")
        if self.ingham_omega is not None and self.ingham_omega < 0:
            raise ConfigError("ingham_omega должно быть >= 0")

    def validated(self):
        """Копия с проверенной конфигурацией для своей команды.

        Профиль проверяется сразу: f_n = 0 делает задачу моментов
        неразрешимой (ProfileError).
        """
        config = validate_config(self.config, self.command)
        project_profile(config.profile_rule, config.n_modes,
                        self.profile_values)
        return replace(self, config=config)

    def modal_state(self, n_modes=None):
        """Начальные данные и профиль на модах 1..N."""
        n_modes = n_modes or self.config.n_modes
        u0, u1 = initial_data(self.data_rule, n_modes, self.u0, self.u1)
        f_hat = project_profile(self.config.profile_rule, n_modes,
                                self.profile_values)
        return ModalState.from_coefficients(u0, u1, f_hat)
