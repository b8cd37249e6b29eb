import math

import numpy as np
import pytest

from wavecontrol.models.config import (ConfigError, NumericalError,
                                       ProblemConfig, validate_config)
from wavecontrol.models.modal_state import ControlSignal, ModalState
from wavecontrol.models.moment import MomentSystem, minnorm_control
from wavecontrol.models.pde import (ModeDynamics, final_residual,
                                    free_decay_envelope, mode_propagate,
                                    phi_functions, simulate, state_energy)

RESONANT = ControlSignal(
    0.0, 2 * math.pi, np.zeros(2),
    exponentials=(np.array([1j, -1j]),
                  np.array([-1j / (2 * math.pi), 1j / (2 * math.pi)]), 0.0))


def test_phi_functions_branches():
    phi1, phi2 = phi_functions(np.array([1e-3, 0.0999, 0.1001, 2.0]))
    assert phi1[0] == pytest.approx(1 + 5e-4 + 1e-6 / 6 + 1e-9 / 24,
                                   rel=1e-12)
    assert phi1[3] == pytest.approx((math.e ** 2 - 1) / 2)
    assert phi2[3] == pytest.approx((math.e ** 2 - 3) / 4)
    assert phi1[1] == pytest.approx(phi1[2], rel=1e-3)


def test_mode_arguments():
    with pytest.raises(ConfigError):
        ModeDynamics(0, 0.1, 0.25)
    with pytest.raises(ConfigError):
        ModeDynamics(1, 0.1, 0.25, system='heat')
    with pytest.raises(NumericalError):
        ModeDynamics(4, 0.5, 0.75, system='ec_in1')


def test_free_damped_mode():
    dyn = ModeDynamics(1, 0.1, 0.25)
    u, du = mode_propagate(dyn, (1.0, -0.1), t_span=(0.0, math.pi))
    assert u == pytest.approx(-math.exp(-0.1 * math.pi))
    assert du == pytest.approx(0.1 * math.exp(-0.1 * math.pi))


@pytest.mark.parametrize("system", ['ec_in', 'ec_in1', 'ec_in0'])
def test_propagator_group_property(system):
    dyn = ModeDynamics(3, 0.1, 0.75, system)
    middle = mode_propagate(dyn, (1.0, 0.5j), t_span=(0.0, 1.0))
    split = mode_propagate(dyn, middle, t_span=(1.0, 2.5))
    direct = mode_propagate(dyn, (1.0, 0.5j), t_span=(0.0, 2.5))
    assert np.allclose(split, direct, rtol=1e-12, atol=1e-14)


def test_resonant_exponential_control_reaches_rest():
    dyn = ModeDynamics(1, 0.0, 0.0, f_hat=math.pi / 2)
    u, du = mode_propagate(dyn, (math.pi / 2, 0.0), RESONANT,
                           (0.0, 2 * math.pi))
    assert abs(u) < 1e-12 and abs(du) < 1e-12


def test_resonant_sampled_control_reaches_rest():
    times = np.linspace(0.0, 2 * math.pi, 2001)
    control = ControlSignal(0.0, 2 * math.pi, np.sin(times) / math.pi)
    dyn = ModeDynamics(1, 0.0, 0.0, f_hat=math.pi / 2)
    u, du = mode_propagate(dyn, (math.pi / 2, 0.0), control,
                           (0.0, 2 * math.pi))
    assert abs(u) < 1e-4 and abs(du) < 1e-4
    with pytest.raises(ConfigError):
        mode_propagate(dyn, (1.0, 0.0), control, (0.0, 7.0))


def test_oracle_control_nulls_state(limit_config, resonant_data):
    system = MomentSystem.from_data(resonant_data, limit_config.horizon,
                                    0.0, 0.0)
    control = minnorm_control(system).control
    trajectory = simulate(limit_config, resonant_data, control)
    assert trajectory.energy[0] == pytest.approx(math.pi / 2)
    assert final_residual(trajectory.final, resonant_data) < 1e-20


def test_free_energy_decreases(base_config):
    u0 = 1.0 / np.arange(1, 9) ** 2
    data = ModalState.from_coefficients(u0, np.zeros(8), np.ones(8))
    trajectory = simulate(base_config, data)
    assert np.all(np.diff(trajectory.energy)
                  <= 1e-12 * trajectory.energy[0])
    expected = np.array([free_decay_envelope(
        ModeDynamics(n, 0.1, 0.25), trajectory.times) for n in range(1, 9)])
    assert np.allclose(trajectory.root_energy,
                       expected * trajectory.root_energy[:, :1], rtol=1e-10)


def test_simulate_checks_control_interval(limit_config, resonant_data):
    control = ControlSignal(0.0, 1.0, np.zeros(4))
    with pytest.raises(ConfigError):
        simulate(limit_config, resonant_data, control)


def test_state_energy_and_residual(resonant_data):
    assert state_energy(resonant_data, 0.0, 0.0) == pytest.approx(math.pi / 2)
    rest = resonant_data.with_values([0.0], [0.0])
    assert final_residual(rest, rest) == 0.0
    assert final_residual(resonant_data, rest) == math.inf


def test_energy_is_conserved_without_viscosity():
    cfg = validate_config(ProblemConfig(alpha=0.25, epsilon=0.0,
                                        horizon=2 * math.pi, n_modes=4))
    u0 = 1.0 / np.arange(1, 5) ** 2
    data = ModalState.from_coefficients(u0, 1.0 / np.arange(1, 5) ** 3,
                                        np.ones(4))
    trajectory = simulate(cfg, data)
    assert np.allclose(trajectory.energy, trajectory.energy[0], rtol=1e-12)
