import random

import pytest

from spincover.cover import parity_operator
from spincover.ptgroup import time_reversal_operator


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def parity():
    return parity_operator()


@pytest.fixture
def treverse():
    return time_reversal_operator()
