import json

import pytest

from wavecontrol import constants as C
from wavecontrol.models.config import ConfigError
from wavecontrol.services.config_loader import ConfigLoader, default_sections


def write_json(path, data):
    path.write_text(json.dumps(data), encoding='utf-8')


def test_missing_file_is_created(tmp_path):
    path = tmp_path / 'configs' / 'run.json'
    loader = ConfigLoader(str(path))
    assert path.exists()
    assert json.loads(path.read_text(encoding='utf-8')) == default_sections()
    assert loader.problem_config().alpha == C.DEFAULT_ALPHA


def test_file_values_are_merged(tmp_path):
    path = tmp_path / 'run.json'
    write_json(path, {'problem': {'alpha': 0.75, 'epsilon': 0.01}})
    cfg = ConfigLoader(str(path)).problem_config()
    assert cfg.alpha == 0.75 and cfg.epsilon == 0.01
    assert cfg.n_modes == C.DEFAULT_MODES


@pytest.mark.parametrize("content", [
    '{"problem": {"alpha": 0.25',
    '[1, 2]',
    '{"physics": {}}',
    '{"problem": {"beta": 1.0}}',
    '{"problem": 3}',
])
def test_broken_file_refused(tmp_path, content):
    path = tmp_path / 'run.json'
    path.write_text(content, encoding='utf-8')
    with pytest.raises(ConfigError):
        ConfigLoader(str(path))


def test_broken_file_reset(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text('not json', encoding='utf-8')
    loader = ConfigLoader(str(path), reset=True)
    assert loader.sections == default_sections()
    assert json.loads(path.read_text(encoding='utf-8')) == default_sections()


def test_flags_override_file(tmp_path):
    path = tmp_path / 'run.json'
    write_json(path, {'problem': {'alpha': 0.75},
                      'experiment': {'seed': 7}})
    loader = ConfigLoader(str(path))
    spec = loader.experiment_spec(C.Command.CONTROL_SOLVE, alpha=0.25,
                                  seed=None, synthesis='series')
    assert spec.config.alpha == 0.25
    assert spec.seed == 7
    assert spec.synthesis == 'series'
    assert loader.sections['problem']['alpha'] == 0.75
    with pytest.raises(ConfigError):
        loader.apply_overrides(delta=2.0)


def test_complex_values(tmp_path):
    path = tmp_path / 'run.json'
    write_json(path, {'data': {'rule': 'explicit', 'u0': [1.0, [0.0, 2.0]]},
                      'problem': {'n_modes': 2}})
    spec = ConfigLoader(str(path)).experiment_spec(C.Command.CONTROL_SOLVE)
    assert spec.u0 == (1 + 0j, 2j)
    data = spec.modal_state()
    assert data.u0.tolist() == [1, 2j]
    assert not data.is_real()


def test_bad_values_refused(tmp_path):
    path = tmp_path / 'run.json'
    write_json(path, {'data': {'u0': [[1.0, 2.0, 3.0]]}})
    with pytest.raises(ConfigError):
        ConfigLoader(str(path)).experiment_spec(C.Command.SPECTRUM_DUMP)
    write_json(path, {'experiment': {'synthesis': 'guess'}})
    with pytest.raises(ConfigError):
        ConfigLoader(str(path)).experiment_spec(C.Command.SPECTRUM_DUMP)
    write_json(path, {'problem': {'horizon': 'long'}})
    with pytest.raises(ConfigError):
        ConfigLoader(str(path)).experiment_spec(C.Command.SPECTRUM_DUMP)


def test_half_refused_on_validation(tmp_path):
    path = tmp_path / 'run.json'
    loader = ConfigLoader(str(path))
    spec = loader.experiment_spec(C.Command.CONTROL_SOLVE, alpha=0.5)
    with pytest.raises(ConfigError):
        spec.validated()
