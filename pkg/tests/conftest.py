import numpy as np
import pytest

ACCEPTANCE_LINES = []

PAPER_M = [[1.0, 2.0, 2.0], [0.5, 1.0, 1.0], [0.5, 1.0, 1.0]]


@pytest.fixture
def paper_matrix():
    return np.array(PAPER_M)


@pytest.fixture
def rng():
    return np.random.default_rng(20150101)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
