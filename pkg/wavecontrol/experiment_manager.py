import logging
import math
from dataclasses import replace

import numpy as np

from . import constants as C
from .models.config import (NumericalError, ProblemConfig, WaveControlError,
                            validate_config)
from .models.modal_state import ModalState, h0_norm_sq
from .models.spectrum import (constants_d, constants_l1, constants_l2,
                              muntz_partial_sums, root_map_violations,
                              slow_roots, spectrum_rows)
from .models.weierstrass import (ProductEvaluator, envelope_bound,
                                 envelope_fit, pm_interpolation_check,
                                 qm_bound_check)
from .models.multiplier import mm_property_check
from .models.biorthogonal import (biorthogonality_matrix, fit_omega,
                                  norm_growth_fit, scaled_deviation,
                                  sinc_family, stacked_norm_check,
                                  symmetric_grid, theta_family, zeta_family)
from .models.moment import (MomentSystem, gram_condition, ingham_ratio,
                            ingham_spread, ingham_trials, minnorm_control,
                            synthesize_control_series,
                            verify_oracle_agreement)
from .models.pde import final_residual, simulate
from .services.report_writer import ReportWriter
from .views.summary_view import SummaryView

log = logging.getLogger(__name__)


def signed_indices(n_modes):
    """-N..-1, 1..N."""
    return [m for m in range(-n_modes, n_modes + 1) if m != 0]


def build_family(cfg, ms):
    """Семейство для синтеза: sinc при eps = 0, иначе zeta (theta при a = 0)."""
    if cfg.epsilon == 0:
        return sinc_family(ms, cfg.time_grid)
    theta = theta_family(cfg, ms)
    if cfg.smoothing_a > 0:
        return zeta_family(theta, cfg.smoothing_a)
    return theta


class ExperimentManager:
    """Управляет запуском команды: проверка, расчёт, запись и вывод итогов."""

    def __init__(self, spec, view=None):
        self.spec = spec.validated()
        self.cfg = self.spec.config
        self.out_dir = self.spec.out_dir
        self.view = view or SummaryView()
        self.checks = []
        self.handlers = {
            C.Command.SPECTRUM_DUMP: self.spectrum_dump,
            C.Command.WEIERSTRASS_CHECK: self.weierstrass_check,
            C.Command.MULTIPLIER_CHECK: self.multiplier_check,
            C.Command.BIORTH_BUILD: self.biorth_build,
            C.Command.BIORTH_VERIFY: self.biorth_verify,
            C.Command.CONTROL_SOLVE: self.control_solve,
            C.Command.CONTROL_VERIFY: self.control_verify,
            C.Command.SWEEP_EPSILON: self.sweep_epsilon,
            C.Command.DEGENERACY: self.degeneracy,
            C.Command.INGHAM_RUN: self.ingham_run,
            C.Command.SIMULATE: self.run_simulation,
            C.Command.VERIFY: self.verify,
        }

    def run(self):
        """Выполняет команду и возвращает код выхода."""
        handler = self.handlers[self.spec.command]
        log.info("Команда %s: alpha=%g, eps=%g, N=%d, T=%.6g",
                 self.spec.command, self.cfg.alpha, self.cfg.epsilon,
                 self.cfg.n_modes, self.cfg.horizon)
        handler()
        if self.checks:
            self.view.draw(self.view.render_checks(self.checks))
        failed = [name for name, passed, _ in self.checks if not passed]
        if failed:
            log.warning("Не пройдены проверки: %s", ", ".join(failed))
            return C.EXIT_CHECK_FAILED
        return C.EXIT_OK

    def _check(self, name, passed, detail):
        self.checks.append((name, bool(passed), detail))
        return bool(passed)

    def _metadata(self, **extra):
        return {'command': self.spec.command, 'config': self.cfg.to_dict(),
                'seed': self.spec.seed, **extra}

    def _write(self, name, columns, rows, title=None, **extra):
        ReportWriter.write_table(self.out_dir, name, columns, rows,
                                 self._metadata(**extra))
        if title:
            self.view.draw(self.view.render_table(title, columns, rows))

    # Спектр

    def spectrum_dump(self):
        cfg = self.cfg
        rows = spectrum_rows(cfg.n_modes, cfg.epsilon, cfg.alpha)
        constants = {}
        if cfg.alpha > 0 and not cfg.is_half:
            constants = {'l1': constants_l1(cfg.epsilon, cfg.alpha),
                         'l2': constants_l2(cfg.epsilon, cfg.alpha),
                         'd': constants_d(cfg.alpha)}
        self._write('spectrum', C.COLUMNS_SPECTRUM, rows, "Спектр lambda_n",
                    constants=constants, gamma_eps=cfg.gamma_eps)
        if cfg.epsilon > 0:
            nu = slow_roots(cfg.n_modes, cfg.epsilon, cfg.alpha)
            sums = muntz_partial_sums(cfg.n_modes, cfg.epsilon, cfg.alpha)
            rows = [[k + 1, float(v.real), float(v.imag), float(s)]
                    for k, (v, s) in enumerate(zip(nu, sums))]
            self._write('slow_roots', C.COLUMNS_SLOW_ROOTS, rows,
                        "Медленные корни nu_(-n)")

    # Произведение и мультипликатор

    def weierstrass_check(self):
        cfg, spec = self.cfg, self.spec
        ev = ProductEvaluator(cfg.epsilon, cfg.alpha)
        ms = signed_indices(spec.check_m_max)
        deviation, worst = pm_interpolation_check(ms, ms, ev)
        rows = [[m, n, float(deviation[i, j])] for i, m in enumerate(ms)
                for j, n in enumerate(ms)]
        self._write('interpolation', C.COLUMNS_INTERPOLATION, rows,
                    tolerance=spec.interpolation_tolerance, worst=worst)
        self._check("интерполяция P_m", worst <= spec.interpolation_tolerance,
                    f"max |P_m(i conj(l_n)) - delta| = {worst:.3e}")

        rows, c_hat, ok = qm_bound_check(spec.qm_holdout_max, cfg.epsilon,
                                         cfg.alpha, ev,
                                         holdout_from=spec.qm_fit_max + 1)
        self._write('qm_bound', C.COLUMNS_QM, rows, "Оценка Q_m",
                    c_hat=c_hat, fit_max=spec.qm_fit_max)
        self._check("оценка Q_m", ok, f"C = {c_hat:.4g}")

        x = symmetric_grid(C.ENVELOPE_HALF_WIDTH, C.ENVELOPE_STEP)
        rows, fits = [], {}
        for m in range(1, spec.check_m_max + 1):
            fit, abs_p = envelope_fit(m, cfg.epsilon, cfg.alpha, x, ev)
            bound = envelope_bound(m, cfg.epsilon, cfg.alpha, x, fit.omega,
                                   fit.c_hat)
            fits[m] = {'omega': fit.omega, 'c_hat': fit.c_hat}
            rows.extend([m, float(xv), float(pv), float(bv)]
                        for xv, pv, bv in zip(x, abs_p, bound))
        self._write('envelope', C.COLUMNS_ENVELOPE, rows, fits=fits)

        lo, hi, count = C.ROOT_MAP_GRID
        failed, checked = root_map_violations(
            spec.check_m_max, np.linspace(lo, hi * spec.check_m_max, count),
            cfg.epsilon, cfg.alpha)
        self._check("неравенства для xi_eps", not failed,
                    f"{checked} пар, нарушений {len(failed)}")

    def multiplier_check(self):
        cfg, spec = self.cfg, self.spec
        lo, hi, count = C.MULTIPLIER_GRID
        x = np.logspace(math.log10(lo), math.log10(hi), count)
        report = mm_property_check(range(1, spec.check_m_max + 1),
                                   cfg.epsilon, cfg.alpha, x)
        self._write('multiplier', C.COLUMNS_MULTIPLIER, report.rows,
                    max_type=report.max_type, l2=report.l2,
                    d=constants_d(cfg.alpha))
        self._check("убывание |M_m(x)|", report.decay_ok, "на всей сетке")
        self._check("нижняя оценка M_m(i conj(l_m))", report.lower_ok,
                    f"D = {constants_d(cfg.alpha):.4g}")
        self._check("phi(e|l_m|) <= 2e^2 |Re l_m|", report.majf_ok, "")
        self._check("условие I1", report.node_sum_ok,
                    f"тип {report.max_type:.4g} <= L2 {report.l2:.4g}")
        self._check("условие I2", report.node_tail_ok, "")

    # Биортогональные семейства

    def _families(self):
        ms = signed_indices(self.cfg.n_modes)
        if self.cfg.epsilon == 0:
            return sinc_family(ms, self.cfg.time_grid), None
        theta = theta_family(self.cfg, ms)
        zeta = (zeta_family(theta, self.cfg.smoothing_a)
                if self.cfg.smoothing_a > 0 else None)
        return theta, zeta

    def _norm_rows(self, theta, zeta):
        re = {m: self.cfg.epsilon * abs(m) ** (2 * self.cfg.alpha)
              for m in theta.indices}
        return [[m, re[m], theta.norms[m],
                 zeta.norms[m] if zeta is not None else float('nan')]
                for m in theta.indices]

    def biorth_build(self):
        theta, zeta = self._families()
        c_hat, beta = norm_growth_fit(theta)
        self._write('norms', C.COLUMNS_NORMS, self._norm_rows(theta, zeta),
                    "Нормы семейства", c_hat=c_hat, beta=beta,
                    family=theta.metadata)
        return theta, zeta

    def _check_biorthogonality(self, family, ms, write=False):
        """|B - I| в масштабе обусловленности; сырое значение идёт в отчёт."""
        matrix, worst = biorthogonality_matrix(family, ms, ms)
        scaled = scaled_deviation(family, matrix, ms, ms)
        if write:
            rows = [[m, n, float(abs(matrix[i, j] - (m == n)))]
                    for i, m in enumerate(ms) for j, n in enumerate(ms)]
            self._write(f'biorthogonality_{family.kind}',
                        C.COLUMNS_INTERPOLATION, rows, worst=worst,
                        worst_scaled=scaled,
                        tolerance=C.BIORTHOGONALITY_TOLERANCE)
        return self._check(f"биортогональность {family.kind}",
                           scaled <= C.BIORTHOGONALITY_TOLERANCE,
                           f"max |B - I| = {worst:.3e}, "
                           f"в масштабе {scaled:.3e}")

    def biorth_verify(self):
        theta, zeta = self.biorth_build()
        ms = theta.indices
        for family in filter(None, (theta, zeta)):
            self._check_biorthogonality(family, ms, write=True)
        stacked = zeta if zeta is not None else theta
        _, beta = norm_growth_fit(stacked)
        fitted, cauchy, _ = stacked_norm_check(stacked, beta,
                                               seed=self.spec.seed)
        self._check("оценка суммы семейства", fitted <= cauchy * (1 + 1e-12),
                    f"C = {fitted:.4g}, граница {cauchy:.4g}, "
                    f"beta = {beta:.4g}")

    # Управление

    def _solve(self, cfg, data, path=None):
        """Управление и число обусловленности (nan для ряда)."""
        path = path or self.spec.synthesis
        if path == 'oracle':
            system = MomentSystem.from_data(data, cfg.horizon, cfg.epsilon,
                                            cfg.alpha)
            solution = minnorm_control(system, cfg.time_grid, self.spec.ridge,
                                       data.is_real())
            return solution.control, solution.condition
        family = build_family(cfg, signed_indices(data.n_max))
        return synthesize_control_series(data, family, cfg.horizon), math.nan

    def _control_row(self, cfg, data, control, condition, system_cfg=None):
        system_cfg = system_cfg or cfg
        trajectory = simulate(system_cfg, data, control)
        residual = final_residual(trajectory.final, data, system_cfg.epsilon,
                                  system_cfg.alpha)
        row = [system_cfg.epsilon, cfg.alpha, data.n_max, cfg.horizon,
               control.l2_norm(), condition, residual,
               control.imag_residual()]
        return row, trajectory

    def _tolerance(self, path=None):
        path = path or self.spec.synthesis
        return (C.RESIDUAL_TOLERANCE if path == 'oracle'
                else C.SERIES_RESIDUAL_TOLERANCE)

    def control_solve(self):
        cfg = self.cfg
        data = self.spec.modal_state()
        energy = h0_norm_sq(data)
        log.info("Начальные данные: ||(u0, u1)||^2 в H_0 = %.6g", energy)
        control, condition = self._solve(cfg, data)
        row, trajectory = self._control_row(cfg, data, control, condition)
        self._write('control', C.COLUMNS_CONTROL, [row], "Управление",
                    synthesis=self.spec.synthesis, h0_norm_sq=energy)
        self._write_trajectory('trajectory', trajectory)
        self._check("финальная невязка", row[6] <= self._tolerance(),
                    f"E(T)/E(0) = {row[6]:.3e}")
        if data.is_real():
            self._check("вещественность управления",
                        row[7] <= C.IMAGINARY_TOLERANCE, f"{row[7]:.2e}")

    def control_verify(self):
        cfg = self.cfg
        data = self.spec.modal_state()
        system = MomentSystem.from_data(data, cfg.horizon, cfg.epsilon,
                                        cfg.alpha)
        oracle = minnorm_control(system, cfg.time_grid, self.spec.ridge,
                                 data.is_real())
        family = build_family(cfg, signed_indices(data.n_max))
        series = synthesize_control_series(data, family, cfg.horizon)
        series_res, oracle_res, smaller = verify_oracle_agreement(
            series, oracle, system)
        rows = []
        for control, condition in ((oracle.control, oracle.condition),
                                   (series, math.nan)):
            row, _ = self._control_row(cfg, data, control, condition)
            rows.append(row)
        self._write('control_verify', C.COLUMNS_CONTROL, rows,
                    "Оракул и ряд", paths=['oracle', 'series'],
                    moment_residuals=[oracle_res, series_res])
        self._check("моменты оракула", oracle_res <= C.RESIDUAL_TOLERANCE,
                    f"{oracle_res:.3e}")
        self._check("моменты ряда", series_res <= C.SERIES_RESIDUAL_TOLERANCE,
                    f"{series_res:.3e}")
        self._check("норма оракула не больше", smaller,
                    f"{oracle.control.l2_norm():.6g} <= "
                    f"{series.l2_norm():.6g}")

    def sweep_epsilon(self):
        data = self.spec.modal_state()
        rows = []
        for horizon in self.spec.horizons or (self.cfg.horizon,):
            rows.extend(self._sweep_at(data, float(horizon)))
        self._write('sweep_epsilon', C.COLUMNS_CONTROL, rows,
                    "Развёртка по eps")

    def _sweep_at(self, data, horizon, path=None):
        """Строки развёртки при одном T и строка слабого предела."""
        base = replace(self.cfg, horizon=horizon)
        rows, control, cfg = [], None, base
        for eps in sorted(self.spec.epsilons, reverse=True):
            cfg = validate_config(replace(base, epsilon=eps),
                                  C.Command.SWEEP_EPSILON)
            control, condition = self._solve(cfg, data, path)
            row, _ = self._control_row(cfg, data, control, condition)
            rows.append(row)
            self._check(f"невязка eps={eps:g}, T={horizon:.4g}",
                        row[6] <= self._tolerance(path), f"{row[6]:.3e}")
            if data.is_real():
                self._check(f"вещественность eps={eps:g}, T={horizon:.4g}",
                            row[7] <= C.IMAGINARY_TOLERANCE, f"{row[7]:.2e}")
        norms = [row[4] for row in rows]
        spread = max(norms) / min(norms) if min(norms) > 0 else math.inf
        # Управление при наименьшем eps на предельной системе eps = 0
        limit_cfg = validate_config(replace(base, epsilon=0.0))
        limit_row, _ = self._control_row(cfg, data, control, math.nan,
                                         limit_cfg)
        rows.append(limit_row)
        self._check(f"равномерная ограниченность ||v_eps||, T={horizon:.4g}",
                    spread <= C.SWEEP_NORM_RATIO, f"max/min = {spread:.4g}")
        self._check(f"слабый предел, T={horizon:.4g}",
                    limit_row[6] <= C.WEAK_LIMIT_TOLERANCE,
                    f"невязка при eps = 0: {limit_row[6]:.3e}")
        return rows

    def _write_trajectory(self, name, trajectory):
        modes = trajectory.final.indices
        columns = C.COLUMNS_TRAJECTORY + [f'energy_{n}' for n in modes]
        rows = [[float(t), float(e)] + trajectory.modal_energy[:, i].tolist()
                for i, (t, e) in enumerate(zip(trajectory.times,
                                               trajectory.energy))]
        self._write(name, columns, rows)

    def run_simulation(self):
        data = self.spec.modal_state()
        trajectory = simulate(self.cfg, data, system=self.spec.system)
        residual = final_residual(trajectory.final, data, self.cfg.epsilon,
                                  self.cfg.alpha, self.spec.system)
        self._write_trajectory('trajectory', trajectory)
        steps = np.diff(trajectory.energy)
        rise = float(max(0.0, steps.max())) if steps.size else 0.0
        self._check("энергия не возрастает",
                    rise <= C.ENERGY_TOLERANCE * trajectory.energy[0],
                    f"E(T)/E(0) = {residual:.6g}")

    # Диагностика

    def degeneracy(self):
        spec = self.spec
        rows, table = [], {}
        for alpha in spec.alphas:
            for n in sorted(spec.modes):
                raw, unit = gram_condition(spec.degeneracy_epsilon, alpha, n,
                                           self.cfg.horizon)
                rows.append([alpha, n, raw, unit])
                table[(alpha, n)] = raw
        self._write('degeneracy', C.COLUMNS_DEGENERACY, rows,
                    "Обусловленность матрицы Грама",
                    epsilon=spec.degeneracy_epsilon)
        n_top = max(spec.modes)
        if 0.5 in spec.alphas:
            half = [table[(0.5, n)] for n in sorted(spec.modes)]
            self._check("рост cond(G) при alpha = 1/2",
                        all(b > a for a, b in zip(half, half[1:])),
                        ", ".join(f"{v:.3e}" for v in half))
            for alpha in spec.alphas:
                if alpha < 0.5:
                    ratio = table[(0.5, n_top)] / table[(alpha, n_top)]
                    self._check(f"alpha = 1/2 хуже alpha = {alpha:g}",
                                ratio > 1, f"отношение {ratio:.3e}")

    def _ingham_omega(self):
        """Вес Ингама: из конфигурации или omega огибающей P_m."""
        spec, cfg = self.spec, self.cfg
        if spec.ingham_omega is not None:
            return float(spec.ingham_omega)
        if cfg.is_half:
            log.warning("alpha = 1/2: omega огибающей не определено, вес "
                        "Ингама %g", C.DEFAULT_OMEGA_WEIGHT)
            return C.DEFAULT_OMEGA_WEIGHT
        fit_cfg = replace(cfg, epsilon=cfg.epsilon or max(
            spec.ingham_epsilons), omega_mode='fitted')
        ms = list(range(1, min(spec.check_m_max, spec.ingham_modes) + 1))
        return float(fit_omega(fit_cfg, ms))

    def ingham_run(self):
        spec, cfg = self.spec, self.cfg
        omega = self._ingham_omega()
        infima, spread = ingham_spread(spec.ingham_epsilons, cfg.alpha,
                                       spec.ingham_modes, spec.ingham_horizon,
                                       omega)
        rows, minima = [], []
        for eps in spec.ingham_epsilons:
            ratios = ingham_trials(spec.ingham_modes, eps, cfg.alpha,
                                   spec.ingham_horizon, spec.ingham_trials,
                                   spec.seed, omega)
            rows.extend([eps, cfg.alpha, k, float(r)]
                        for k, r in enumerate(ratios))
            minima.append(float(ratios.min()))
        self._write('ingham', C.COLUMNS_INGHAM, rows, minima=minima,
                    infima=infima.tolist(), spread=spread, omega_weight=omega)
        self._check("положительность нижней грани Ингама", infima.min() > 0,
                    f"inf = {infima.min():.4g}, omega = {omega:g}")
        self._check("испытания не ниже нижней грани",
                    all(m >= i * (1 - C.INGHAM_INFIMUM_RTOL)
                        for m, i in zip(minima, infima)),
                    ", ".join(f"{m:.4g} >= {i:.4g}"
                              for m, i in zip(minima, infima)))
        self._check("разброс по eps", spread <= C.INGHAM_SPREAD_LIMIT,
                    f"{spread:.4g}")

        rng = np.random.default_rng(spec.seed)
        indices = np.array(signed_indices(spec.ingham_modes))
        coeffs = rng.standard_normal(indices.size) + 1j * rng.standard_normal(
            indices.size)
        eps = spec.ingham_epsilons[0]
        by_gram = ingham_ratio(indices, coeffs, eps, cfg.alpha,
                               spec.ingham_horizon, omega)
        by_quad = ingham_ratio(indices, coeffs, eps, cfg.alpha,
                               spec.ingham_horizon, omega,
                               method='quadrature')
        gap = abs(by_gram - by_quad) / by_gram
        self._check("квадратура против формулы Грама",
                    gap <= C.INGHAM_AGREEMENT_TOLERANCE, f"{gap:.2e}")

    def verify(self):
        """Сводный набор проверок для текущей конфигурации."""
        cfg, spec = self.cfg, self.spec
        self._verify_sinc_limit()
        self._verify_resonance()

        ms = signed_indices(spec.check_m_max)
        product = ProductEvaluator(cfg.epsilon, cfg.alpha)
        _, worst = pm_interpolation_check(ms, ms, product)
        self._check("интерполяция P_m", worst <= spec.interpolation_tolerance,
                    f"{worst:.3e} (допуск {spec.interpolation_tolerance:g})")

        if cfg.alpha > 0 and cfg.epsilon > 0:
            lo, hi, count = C.MULTIPLIER_GRID
            x = np.logspace(math.log10(lo), math.log10(hi), count)
            report = mm_property_check(range(1, spec.check_m_max + 1),
                                       cfg.epsilon, cfg.alpha, x)
            self._check("свойства мультипликатора", report.passed,
                        f"тип {report.max_type:.4g}")

        if cfg.epsilon > 0:
            ms = signed_indices(min(cfg.n_modes, C.VERIFY_BIORTH_MAX))
            theta = theta_family(cfg, ms)
            self._check_biorthogonality(theta, ms)
            if cfg.smoothing_a > 0:
                self._check_biorthogonality(
                    zeta_family(theta, cfg.smoothing_a), ms)

        _, c_hat, ok = qm_bound_check(spec.qm_holdout_max, cfg.epsilon,
                                      cfg.alpha, product,
                                      holdout_from=spec.qm_fit_max + 1)
        self._check("оценка Q_m", ok, f"C = {c_hat:.4g}")

        omega = self._ingham_omega()
        infima, spread = ingham_spread(spec.ingham_epsilons, cfg.alpha,
                                       spec.ingham_modes, spec.ingham_horizon,
                                       omega)
        self._check("разброс нижних граней Ингама",
                    spread <= C.INGHAM_SPREAD_LIMIT,
                    f"{spread:.4g}, omega = {omega:g}")

        data = spec.modal_state()
        self._sweep_at(data, cfg.horizon, 'oracle')

        control, condition = self._solve(cfg, data, 'oracle')
        row, _ = self._control_row(cfg, data, control, condition)
        self._check("управление минимальной нормы",
                    row[6] <= C.RESIDUAL_TOLERANCE,
                    f"E(T)/E(0) = {row[6]:.3e}")

        free = simulate(cfg, data)
        steps = np.diff(free.energy)
        self._check("закон энергии",
                    np.all(steps <= C.ENERGY_TOLERANCE * free.energy[0]),
                    f"E(T)/E(0) = {free.energy[-1] / free.energy[0]:.6g}")
        self._write('verify', C.COLUMNS_CHECKS,
                    [[name, passed, detail]
                     for name, passed, detail in self.checks])

    def _verify_sinc_limit(self):
        ms = signed_indices(C.SINC_CHECK_MAX)
        family = sinc_family(ms, self.cfg.time_grid)
        _, worst = biorthogonality_matrix(family, ms, ms)
        self._check("биортогональность sinc", worst <= C.SINC_TOLERANCE,
                    f"{worst:.2e}")

    def _verify_resonance(self):
        cfg = validate_config(ProblemConfig(alpha=0.0, epsilon=0.0,
                                            horizon=2 * math.pi, n_modes=1,
                                            time_grid=self.cfg.time_grid))
        data = ModalState.from_coefficients([math.pi / 2], [0.0],
                                            [math.pi / 2])
        system = MomentSystem.from_data(data, cfg.horizon, 0.0, 0.0)
        control = minnorm_control(system, cfg.time_grid).control
        t = control.times
        error = float(np.max(np.abs(control.samples - np.sin(t) / math.pi)))
        self._check("резонансное управление sin(t)/pi",
                    error <= C.RESIDUAL_TOLERANCE, f"{error:.2e}")


def run_command(spec, view=None):
    """Запуск команды с переводом ошибок в коды выхода."""
    try:
        manager = ExperimentManager(spec, view)
        return manager.run()
    except NumericalError as e:
        log.error("Численная ошибка: %s", e)
        return C.EXIT_CHECK_FAILED
    except WaveControlError as e:
        log.error("Некорректные входные данные: %s", e)
        return C.EXIT_INVALID_INPUT
