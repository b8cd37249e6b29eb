import math
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wavecontrol.models.config import (ProblemConfig,  # noqa: E402
                                       validate_config)
from wavecontrol.models.modal_state import ModalState  # noqa: E402


@pytest.fixture
def resonant_data():
    """Одна мода: u0_1 = pi/2, u1_1 = 0, f_1 = pi/2."""
    return ModalState.from_coefficients([math.pi / 2], [0.0], [math.pi / 2])


@pytest.fixture
def limit_config():
    return validate_config(ProblemConfig(alpha=0.0, epsilon=0.0,
                                         horizon=2 * math.pi, n_modes=1))


@pytest.fixture
def base_config():
    return validate_config(ProblemConfig(alpha=0.25, epsilon=0.1,
                                         horizon=2 * math.pi, n_modes=8))
