import random

import pytest

from neronzeta.elliptic import KodairaType, kodaira_input
from neronzeta.jumps import JumpSpectrum, make_profile

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def type_ii():
    return kodaira_input(KodairaType("II"))


@pytest.fixture
def multiplicative():
    return make_profile(JumpSpectrum(1, 1, [(0, 1)]), {1: (1, 0, 1)})


@pytest.fixture
def good():
    return make_profile(JumpSpectrum(1, 1, [(0, 1)]), {1: (0, 1, 1, "B")})


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
