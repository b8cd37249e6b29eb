import copy
import json
import logging
import os

from .. import constants as C
from ..models.config import ConfigError, ProblemConfig, QuadratureBudget
from ..models.experiment import ExperimentSpec

log = logging.getLogger(__name__)

# Разделы JSON и поля ProblemConfig / ExperimentSpec, которые они задают
PROBLEM_KEYS = ('alpha', 'epsilon', 'horizon', 'n_modes')
PSI_KEYS = ('delta', 'omega_mode', 'omega_value', 'decay_boost',
            'smoothing_a')
QUADRATURE_KEYS = ('x_max_start', 'x_max_limit', 'points_per_unit',
                   'tolerance', 'time_grid')
PROFILE_KEYS = ('rule', 'values')
DATA_KEYS = ('rule', 'u0', 'u1')
EXPERIMENT_KEYS = ('seed', 'out', 'synthesis', 'system', 'ridge', 'epsilons',
                   'alphas', 'modes', 'horizons', 'degeneracy_epsilon',
                   'ingham_epsilons', 'ingham_modes', 'ingham_horizon',
                   'ingham_trials', 'ingham_omega', 'check_m_max',
                   'qm_fit_max', 'qm_holdout_max', 'interpolation_tolerance')
SECTIONS = {'problem': PROBLEM_KEYS, 'psi': PSI_KEYS,
            'quadrature': QUADRATURE_KEYS, 'profile': PROFILE_KEYS,
            'data': DATA_KEYS, 'experiment': EXPERIMENT_KEYS}

# Флаги командной строки, перекрывающие файл
OVERRIDES = {'alpha': ('problem', 'alpha'), 'epsilon': ('problem', 'epsilon'),
             'n_modes': ('problem', 'n_modes'),
             'horizon': ('problem', 'horizon'), 'seed': ('experiment', 'seed'),
             'out': ('experiment', 'out'),
             'synthesis': ('experiment', 'synthesis'),
             'system': ('experiment', 'system')}


def default_sections():
    """Значения по умолчанию из constants."""
    budget = QuadratureBudget()
    return {
        'problem': {'alpha': C.DEFAULT_ALPHA, 'epsilon': C.DEFAULT_EPSILON,
                    'horizon': C.DEFAULT_HORIZON, 'n_modes': C.DEFAULT_MODES},
        'psi': {'delta': C.DEFAULT_DELTA, 'omega_mode': 'fitted',
                'omega_value': C.DEFAULT_OMEGA,
                'decay_boost': C.DEFAULT_DECAY_BOOST,
                'smoothing_a': C.DEFAULT_SMOOTHING_A},
        'quadrature': {'x_max_start': budget.x_max_start,
                       'x_max_limit': budget.x_max_limit,
                       'points_per_unit': budget.points_per_unit,
                       'tolerance': budget.tolerance,
                       'time_grid': C.DEFAULT_TIME_GRID},
        'profile': {'rule': C.DEFAULT_PROFILE_RULE, 'values': None},
        'data': {'rule': C.DEFAULT_DATA_RULE, 'u0': None, 'u1': None},
        'experiment': {
            'seed': C.DEFAULT_SEED, 'out': C.RESULTS_DIR,
            'synthesis': C.DEFAULT_SYNTHESIS_PATH,
            'system': C.DEFAULT_SYSTEM, 'ridge': 0.0,
            'epsilons': list(C.SWEEP_EPSILONS),
            'alphas': list(C.DEGENERACY_ALPHAS),
            'modes': list(C.DEGENERACY_MODES), 'horizons': [],
            'degeneracy_epsilon': C.DEGENERACY_EPSILON,
            'ingham_epsilons': list(C.INGHAM_EPSILONS),
            'ingham_modes': C.INGHAM_MODES,
            'ingham_horizon': C.INGHAM_HORIZON,
            'ingham_trials': C.INGHAM_TRIALS, 'ingham_omega': None,
            'check_m_max': C.CHECK_M_MAX, 'qm_fit_max': C.QM_FIT_MAX,
            'qm_holdout_max': C.QM_HOLDOUT_MAX,
            'interpolation_tolerance': C.INTERPOLATION_TOLERANCE},
    }


def _complex_values(values):
    """Список чисел или пар [re, im]."""
    if values is None:
        return None
    result = []
    for item in values:
        if isinstance(item, (list, tuple)):
            if len(item) != 2:
                raise ConfigError(f"Ожидалась пара [re, im], получено {item}")
            result.append(complex(item[0], item[1]))
        else:
            result.append(complex(item))
    return tuple(result)


class ConfigLoader:
    """Загрузка и сохранение конфигурации эксперимента в JSON."""

    def __init__(self, filepath=None, reset=False):
        self.filepath = filepath or os.path.join(C.CONFIG_DIR, C.CONFIG_FILE)
        self.sections = default_sections()
        self._ensure_config_dir()
        self.load(reset)

    def _ensure_config_dir(self):
        """Проверка на существование директории конфигурации."""
        folder = os.path.dirname(self.filepath)
        if folder and not os.path.exists(folder):
            os.makedirs(folder)

    def load(self, reset=False):
        """Загрузка конфигурации из JSON-файла (отсутствующий создаётся)."""
        if not os.path.exists(self.filepath):
            log.info("Файл конфигурации '%s' не найден, создается новый",
                     self.filepath)
            self.save()
            return

        try:
            with open(self.filepath, 'r', encoding='utf-8') as f:
                data = json.load(f)
            self._merge(data)
        except (json.JSONDecodeError, IOError, TypeError, ConfigError) as e:
            log.warning("Ошибка загрузки конфигурации '%s': %s", self.filepath,
                        e)
            if not reset:
                raise ConfigError(
                    f"Некорректный файл конфигурации '{self.filepath}': {e}"
                ) from e
            self.reset_and_save()

    def _merge(self, data):
        if not isinstance(data, dict):
            raise ConfigError("Конфигурация должна быть JSON-объектом")
        unknown = set(data) - set(SECTIONS)
        if unknown:
            raise ConfigError(f"Неизвестные разделы: {sorted(unknown)}")
        merged = default_sections()
        for name, values in data.items():
            if not isinstance(values, dict):
                raise ConfigError(f"Раздел '{name}' должен быть объектом")
            extra = set(values) - set(SECTIONS[name])
            if extra:
                raise ConfigError(f"Неизвестные параметры в разделе "
                                  f"'{name}': {sorted(extra)}")
            merged[name].update(values)
        self.sections = merged

    def save(self, filepath=None, sections=None):
        """Сохранение конфигурации в JSON-файл."""
        path = filepath or self.filepath
        try:
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(sections or self.sections, f, indent=4,
                          ensure_ascii=False)
        except IOError as e:
            log.warning("Ошибка сохранения конфигурации '%s': %s", path, e)

    def reset_and_save(self):
        """Сброс конфигурации к значениям по умолчанию и сохранение."""
        self.sections = default_sections()
        self.save()

    def apply_overrides(self, **overrides):
        """Флаги командной строки поверх файла; None пропускается."""
        sections = copy.deepcopy(self.sections)
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in OVERRIDES:
                raise ConfigError(f"Неизвестный флаг: {key}")
            section, name = OVERRIDES[key]
            sections[section][name] = value
        return sections

    def problem_config(self, sections=None):
        sections = sections or self.sections
        problem, psi = sections['problem'], sections['psi']
        quad = dict(sections['quadrature'])
        time_grid = quad.pop('time_grid')
        try:
            return ProblemConfig.from_dict({
                'alpha': float(problem['alpha']),
                'epsilon': float(problem['epsilon']),
                'horizon': float(problem['horizon']),
                'n_modes': problem['n_modes'], 'delta': float(psi['delta']),
                'omega_mode': psi['omega_mode'],
                'omega_value': float(psi['omega_value']),
                'decay_boost': int(psi['decay_boost']),
                'quad': quad, 'time_grid': int(time_grid),
                'smoothing_a': float(psi['smoothing_a']),
                'profile_rule': sections['profile']['rule']})
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Некорректное значение параметра: {e}") from e

    def experiment_spec(self, command, **overrides):
        """ExperimentSpec для команды: умолчания < файл < флаги."""
        sections = self.apply_overrides(**overrides)
        exp = sections['experiment']
        data = sections['data']
        try:
            return ExperimentSpec(
                command=command, config=self.problem_config(sections),
                epsilons=tuple(float(e) for e in exp['epsilons']),
                alphas=tuple(float(a) for a in exp['alphas']),
                modes=tuple(int(n) for n in exp['modes']),
                horizons=tuple(float(t) for t in exp['horizons']),
                data_rule=data['rule'], u0=_complex_values(data['u0']),
                u1=_complex_values(data['u1']),
                profile_values=_complex_values(sections['profile']['values']),
                out_dir=str(exp['out']), seed=int(exp['seed']),
                synthesis=exp['synthesis'], system=exp['system'],
                ridge=float(exp['ridge']),
                degeneracy_epsilon=float(exp['degeneracy_epsilon']),
                ingham_epsilons=tuple(float(e)
                                      for e in exp['ingham_epsilons']),
                ingham_modes=int(exp['ingham_modes']),
                ingham_horizon=float(exp['ingham_horizon']),
                ingham_trials=int(exp['ingham_trials']),
                ingham_omega=(None if exp['ingham_omega'] is None
                              else float(exp['ingham_omega'])),
                check_m_max=int(exp['check_m_max']),
                qm_fit_max=int(exp['qm_fit_max']),
                qm_holdout_max=int(exp['qm_holdout_max']),
                interpolation_tolerance=float(exp['interpolation_tolerance']))
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"Некорректное значение параметра: {e}") from e
