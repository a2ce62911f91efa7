import numpy as np
import pytest

from eja_interference.algebra import (
    classical,
    complex_hermitian,
    quaternionic_hermitian,
    real_symmetric,
    spin_factor,
)
from eja_interference.system import System

SMALL_KINDS = [
    classical(3),
    real_symmetric(3),
    complex_hermitian(3),
    quaternionic_hermitian(3),
    spin_factor(3),
    complex_hermitian(2),
    spin_factor(2),
]


def kind_id(kind):
    return str(kind)


@pytest.fixture(params=SMALL_KINDS, ids=kind_id)
def kind(request):
    return request.param


@pytest.fixture
def system(kind):
    return System(kind)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
