import numpy as np
import pytest

import pqg


@pytest.fixture
def eu():
    return pqg.euclidean(1)


@pytest.fixture
def eu2():
    return pqg.euclidean(2)


@pytest.fixture
def sp():
    return pqg.sphere2()


@pytest.fixture
def cone3():
    return pqg.cone(3)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
