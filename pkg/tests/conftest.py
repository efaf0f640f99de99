import numpy as np
import pytest

from baryalg import load_fixture, sample_interior

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def square():
    return load_fixture("square")


@pytest.fixture(scope="session")
def triangle():
    return load_fixture("triangle")


@pytest.fixture(scope="session")
def pentagon():
    return load_fixture("pentagon")


@pytest.fixture(scope="session", params=["square", "triangle", "pentagon"])
def polygon(request):
    return load_fixture(request.param)


@pytest.fixture(scope="session")
def square_samples(square):
    return sample_interior(square, 1000, 42)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
