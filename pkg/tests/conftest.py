import pytest

from geophase.config_loader import ValidationSettings, load_figure_datasets
from geophase.models import (
    CorrelatedProjection,
    MarkovianProjection,
    MemoryKernel,
    PostMarkovian,
)


@pytest.fixture
def markovian():
    return MarkovianProjection(gamma2=0.1)


@pytest.fixture
def correlated():
    return CorrelatedProjection(gamma=0.1)


@pytest.fixture
def memory():
    return MemoryKernel(gamma0=1.0, gamma=1.0)


@pytest.fixture
def post():
    return PostMarkovian(gamma0=1.0, gamma=1.0)


@pytest.fixture(params=["markovian", "correlated", "memory", "post"])
def any_model(request):
    return request.getfixturevalue(request.param)


@pytest.fixture(scope="session")
def figure_datasets():
    return load_figure_datasets()


@pytest.fixture(scope="session")
def validation_settings():
    return ValidationSettings.from_yaml()
