import math

import numpy as np
import pytest

from triprod.geometry import make_triangle

SQRT3_2 = math.sqrt(3) / 2


@pytest.fixture
def equilateral():
    return make_triangle((0, 0), (1, 0), (0.5, SQRT3_2))


@pytest.fixture
def case_ii():
    return make_triangle((0, 0), (1, 0), (0.5, 0.25))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
