import random

import pytest

from laxcyc.polymat import PolyMat


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def standard_L():
    """The running example: p = 2, q = 2, L = [[0, x], [x, x^2]]."""
    return PolyMat(2, 2, [[[0, 0, 0], [0, 1, 0]], [[0, 1, 0], [0, 0, 1]]])
