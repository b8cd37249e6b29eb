import pytest

from wavecontrol import constants as C
from wavecontrol.models.config import (ConfigError, DegenerateSpectrumError,
                                       ProblemConfig, QuadratureBudget,
                                       gamma_epsilon, require_synthesis_alpha,
                                       validate_config)


def test_defaults_are_valid():
    cfg = validate_config(ProblemConfig())
    assert cfg.alpha == C.DEFAULT_ALPHA
    assert cfg.gamma_eps is None
    assert validate_config(cfg) == cfg


@pytest.mark.parametrize("field, value", [
    ('alpha', 1.0), ('alpha', -0.1), ('epsilon', 1.0), ('epsilon', -1e-3),
    ('horizon', 0.0), ('n_modes', 0), ('delta', 0.0), ('omega_mode', 'auto'),
    ('decay_boost', -1), ('time_grid', 0), ('smoothing_a', -0.5),
    ('profile_rule', 'gauss'),
])
def test_invalid_fields(field, value):
    with pytest.raises(ConfigError):
        validate_config(ProblemConfig(**{field: value}))


def test_half_refused_for_synthesis_only():
    cfg = ProblemConfig(alpha=0.5)
    with pytest.raises(DegenerateSpectrumError):
        validate_config(cfg, C.Command.CONTROL_SOLVE)
    with pytest.raises(DegenerateSpectrumError):
        validate_config(cfg, C.Command.VERIFY)
    assert validate_config(cfg, C.Command.DEGENERACY).is_half
    with pytest.raises(ConfigError):
        require_synthesis_alpha(0.5 + 1e-13)


def test_gamma_epsilon():
    assert gamma_epsilon(0.1, 0.75) == pytest.approx(100.0)
    assert gamma_epsilon(0.1, 0.25) is None
    assert gamma_epsilon(0.0, 0.75) is None
    cfg = validate_config(ProblemConfig(alpha=0.75, epsilon=0.1))
    assert cfg.gamma_eps == pytest.approx(100.0)


def test_from_dict_roundtrip():
    cfg = ProblemConfig(alpha=0.75, quad=QuadratureBudget(points_per_unit=4))
    restored = ProblemConfig.from_dict(cfg.to_dict())
    assert restored == cfg
    with pytest.raises(ConfigError):
        ProblemConfig.from_dict({'alpha': 0.25, 'beta': 1.0})


@pytest.mark.parametrize("value", [2.5, 0.0, -1.0])
def test_fixed_omega_must_be_positive_integer(value):
    with pytest.raises(ConfigError):
        validate_config(ProblemConfig(omega_mode='fixed', omega_value=value))
    assert validate_config(ProblemConfig(omega_mode='fixed',
                                         omega_value=3.0)).omega_value == 3.0
