import numpy as np
import pytest

from src.analysis.embedding import embed
from src.data import fixtures
from src.data.lorenz import LorenzParams, lorenz_game, shifted_lorenz_glv


@pytest.fixture
def logistic():
    return fixtures.logistic_glv()


@pytest.fixture
def logistic_embedding(logistic):
    return embed(logistic)


@pytest.fixture(scope='session')
def lorenz_params():
    return LorenzParams()


@pytest.fixture(scope='session')
def lorenz_glv(lorenz_params):
    return shifted_lorenz_glv(lorenz_params)


@pytest.fixture(scope='session')
def lorenz_embedding(lorenz_params):
    return lorenz_game(lorenz_params)


@pytest.fixture(scope='session')
def random_systems():
    return fixtures.random_glv_family(seed=0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
