import argparse
import logging
import os
import sys

from wavecontrol import constants as C
from wavecontrol.experiment_manager import run_command
from wavecontrol.models.config import WaveControlError
from wavecontrol.services.config_loader import ConfigLoader

log = logging.getLogger(__name__)

# (команда, действие) -> Command
COMMANDS = {
    ('spectrum', 'dump'): C.Command.SPECTRUM_DUMP,
    ('weierstrass', 'check'): C.Command.WEIERSTRASS_CHECK,
    ('multiplier', 'check'): C.Command.MULTIPLIER_CHECK,
    ('biorth', 'build'): C.Command.BIORTH_BUILD,
    ('biorth', 'verify'): C.Command.BIORTH_VERIFY,
    ('control', 'solve'): C.Command.CONTROL_SOLVE,
    ('control', 'verify'): C.Command.CONTROL_VERIFY,
    ('sweep', 'epsilon'): C.Command.SWEEP_EPSILON,
    ('degeneracy', None): C.Command.DEGENERACY,
    ('ingham', 'run'): C.Command.INGHAM_RUN,
    ('simulate', None): C.Command.SIMULATE,
    ('verify', None): C.Command.VERIFY,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog='main.py',
        description="Нуль-управляемость волнового уравнения с исчезающей "
                    "дробной вязкостью: биортогональные семейства, задача "
                    "моментов и проверка на модальной модели.")
    parser.add_argument('command', choices=sorted({k for k, _ in COMMANDS}),
                        help="Группа команд.")
    parser.add_argument('action', nargs='?', default=None,
                        help="Действие: dump, check, build, verify, solve, "
                             "epsilon, run.")
    parser.add_argument('--config', default=None,
                        help="Путь к JSON-конфигурации "
                             f"(по умолчанию {C.CONFIG_DIR}/{C.CONFIG_FILE}).")
    parser.add_argument('--out', default=None, help="Каталог результатов.")
    parser.add_argument('--seed', type=int, default=None,
                        help="Зерно случайных испытаний.")
    path = parser.add_mutually_exclusive_group()
    path.add_argument('--oracle', dest='synthesis', action='store_const',
                      const='oracle', help="Управление минимальной нормы.")
    path.add_argument('--series', dest='synthesis', action='store_const',
                      const='series', help="Управление рядом по семейству.")
    parser.add_argument('--alpha', type=float, default=None,
                        help="Показатель дробного лапласиана, [0, 1).")
    parser.add_argument('--epsilon', type=float, default=None,
                        help="Коэффициент вязкости, [0, 1).")
    parser.add_argument('--modes', dest='n_modes', type=int, default=None,
                        help="Число мод N.")
    parser.add_argument('--horizon', type=float, default=None,
                        help="Горизонт управления T.")
    parser.add_argument('--system', default=None,
                        choices=('ec_in', 'ec_in1', 'ec_in0'),
                        help="Модальная система для simulate.")
    parser.add_argument('--reset-config', action='store_true',
                        help="Заменить испорченный файл конфигурации "
                             "значениями по умолчанию.")
    parser.add_argument('--verbose', action='store_true',
                        help="Подробный журнал (DEBUG).")
    return parser


def main(argv=None):
    """Главная функция: разбор аргументов, конфигурация и запуск команды."""
    parser = build_parser()
    args = parser.parse_args(argv)
    key = (args.command, args.action)
    if key not in COMMANDS:
        parser.error(
            f"неизвестная команда: {args.command} {args.action or ''}")

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(levelname)s %(name)s: %(message)s')

    overrides = {'alpha': args.alpha, 'epsilon': args.epsilon,
                 'n_modes': args.n_modes, 'horizon': args.horizon,
                 'seed': args.seed, 'out': args.out,
                 'synthesis': args.synthesis, 'system': args.system}
    try:
        loader = ConfigLoader(args.config, reset=args.reset_config)
        spec = loader.experiment_spec(COMMANDS[key], **overrides)
    except WaveControlError as e:
        log.error("Некорректная конфигурация: %s", e)
        return C.EXIT_INVALID_INPUT

    os.makedirs(spec.out_dir, exist_ok=True)
    loader.save(os.path.join(spec.out_dir, C.CONFIG_ECHO_FILE),
                loader.apply_overrides(**overrides))
    return run_command(spec)


if __name__ == "__main__":
    sys.exit(main())
