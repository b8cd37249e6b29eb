import math

# Общие настройки
CONFIG_DIR = 'configs'
CONFIG_FILE = 'default.json'
RESULTS_DIR = 'results'
SIDECAR_SUFFIX = '.meta.json'
CONFIG_ECHO_FILE = 'config.json'

# Команды


class Command:
    SPECTRUM_DUMP = "spectrum-dump"
    WEIERSTRASS_CHECK = "weierstrass-check"
    MULTIPLIER_CHECK = "multiplier-check"
    BIORTH_BUILD = "biorth-build"
    BIORTH_VERIFY = "biorth-verify"
    CONTROL_SOLVE = "control-solve"
    SWEEP_EPSILON = "sweep-epsilon"
    DEGENERACY = "degeneracy"
    INGHAM_RUN = "ingham-run"
    SIMULATE = "simulate"
    CONTROL_VERIFY = "control-verify"
    VERIFY = "verify"


# Команды, которым нужен биортогональный ряд или решение задачи моментов
SYNTHESIS_COMMANDS = (Command.CONTROL_SOLVE, Command.CONTROL_VERIFY,
                      Command.SWEEP_EPSILON, Command.BIORTH_BUILD,
                      Command.BIORTH_VERIFY, Command.VERIFY)

# Коды выхода
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2

# Параметры задачи по умолчанию
DEFAULT_ALPHA = 0.25
DEFAULT_EPSILON = 0.1
DEFAULT_HORIZON = 2 * math.pi
DEFAULT_MODES = 8
DEFAULT_SEED = 12345

# Параметры функции Psi_m
DEFAULT_DELTA = 1.0
DEFAULT_DECAY_BOOST = 3
DEFAULT_OMEGA = 4
OMEGA_SAFETY_FACTOR = 1.25
DEFAULT_SMOOTHING_A = 0.5

# Правило профиля f
PROFILE_RULES = ('unit', 'inverse', 'inverse_square', 'explicit')

# Начальные данные
DATA_RULES = ('decaying', 'single', 'explicit')
DEFAULT_DATA_RULE = 'decaying'
DEFAULT_PROFILE_RULE = 'unit'

# Квадратуры
DEFAULT_TIME_GRID = 64
DEFAULT_POINTS_PER_UNIT = 8
X_MAX_START = 32.0
X_MAX_LIMIT = 4096.0
TRANSFORM_TOLERANCE = 1e-8
ALIAS_MARGIN = 2.0

# Произведение Вейерштрасса
PRODUCT_TAIL_TOLERANCE = 1e-10
PRODUCT_MIN_PAIRS = 64
PRODUCT_MAX_PAIRS = 2 ** 15
PRODUCT_CHUNK = 256
TAIL_PANEL_NODES = 8
TAIL_DECAY_FLOOR = 0.05
TAIL_DECADES = 36.0
TAIL_THIRD_DIFFERENCE_SCALE = 100.0

# Мультипликатор
MULTIPLIER_TAIL_TOLERANCE = 1e-12
MULTIPLIER_MAX_FACTORS = 2 ** 20
MULTIPLIER_BLOCK = 8192
MULTIPLIER_SERIES_TERMS = 12
UNDERFLOW_LOG_GUARD = -700.0

# Корень xi_eps
XI_RTOL = 1e-13

# Допуски проверок
INTERPOLATION_TOLERANCE = 1e-6
BIORTHOGONALITY_TOLERANCE = 1e-4
IMAGINARY_TOLERANCE = 1e-10
RESIDUAL_TOLERANCE = 1e-9
SERIES_RESIDUAL_TOLERANCE = 1e-4
ALPHA_HALF_TOLERANCE = 1e-12
BOUND_RTOL = 1e-12
GRAM_PRECISION_DIGITS = 60
GRAM_SINGULAR_THRESHOLD = 1e-15
SUPPORT_NOISE_FACTOR = 10.0

# Неравенство Ингама
INGHAM_TRIALS = 100
INGHAM_PANEL_WIDTH = 0.25
INGHAM_PANEL_NODES = 16
DEFAULT_OMEGA_WEIGHT = 1.0

# Оценка (est2) для семейства zeta
EST2_TRIALS = 50

# Развёртка по epsilon
SWEEP_EPSILONS = [1e-1, 1e-2, 1e-3, 1e-4]
DEGENERACY_ALPHAS = [0.25, 0.5, 0.75]
DEGENERACY_MODES = [4, 8, 12, 16]

# Колонки CSV
COLUMNS_SPECTRUM = ['n', 're_lambda', 'im_lambda', 'phi_abs_lambda', 'a_n']
COLUMNS_INTERPOLATION = ['m', 'n', 'deviation']
COLUMNS_QM = ['m', 'q_m', 'bound']
COLUMNS_ENVELOPE = ['m', 'x', 'abs_p', 'envelope']
COLUMNS_MULTIPLIER = ['m', 'x', 'abs_m', 'bound', 'ok']
COLUMNS_NORMS = ['m', 're_lambda', 'theta_norm', 'zeta_norm']
COLUMNS_CONTROL = ['epsilon', 'alpha', 'n_modes', 'horizon', 'control_norm',
                   'gram_cond', 'final_residual', 'imag_residual']
COLUMNS_DEGENERACY = ['alpha', 'n_modes', 'gram_cond', 'normalized_cond']
COLUMNS_INGHAM = ['epsilon', 'alpha', 'trial', 'ratio']
COLUMNS_TRAJECTORY = ['t', 'energy']

# Прочие параметры экспериментов
DEGENERACY_EPSILON = 0.5
INGHAM_MODES = 12
INGHAM_HORIZON = 3 * math.pi
INGHAM_EPSILONS = [1e-1, 1e-2, 1e-3, 1e-4]
CHECK_M_MAX = 8
QM_FIT_MAX = 32
QM_HOLDOUT_MAX = 64
ENVELOPE_HALF_WIDTH = 40.0
MULTIPLIER_GRID = (1e-2, 1e5, 200)
ROOT_MAP_GRID = (1.0, 4.0, 64)
SYNTHESIS_PATHS = ('oracle', 'series')
DEFAULT_SYNTHESIS_PATH = 'oracle'
SUMMARY_MAX_ROWS = 20
ENVELOPE_STEP = 0.25
DEFAULT_SYSTEM = 'ec_in'

# Пороги итоговых проверок
SWEEP_NORM_RATIO = 10.0
WEAK_LIMIT_TOLERANCE = 1e-2
INGHAM_SPREAD_LIMIT = 5.0
INGHAM_INFIMUM_RTOL = 1e-6
VERIFY_BIORTH_MAX = 3
INGHAM_AGREEMENT_TOLERANCE = 1e-10
SINC_CHECK_MAX = 16
SINC_TOLERANCE = 1e-10
ENERGY_TOLERANCE = 1e-12

COLUMNS_SLOW_ROOTS = ['n', 're_nu', 'im_nu', 'muntz_sum']
COLUMNS_CHECKS = ['check', 'passed', 'detail']
