import pytest

from urnscheme import IntegerDistribution, UrnScheme

ACCEPTANCE_LINES = []


def figure1_scheme(alpha0=30, beta0=30):
    return UrnScheme(
        A=7,
        B=2,
        a_law=IntegerDistribution([-5, -2, 4, 7], [1, 2, 2, 1]),
        b_law=IntegerDistribution([-5, 0, 4], [2, 3, 1]),
        alpha0=alpha0,
        beta0=beta0,
    )


def upper_safe_scheme(alpha0=5, beta0=5):
    """A=3, B=1, a and b uniform on {0, 1}: never exhausts, limit (1+sqrt 5)/4."""
    return UrnScheme(
        A=3,
        B=1,
        a_law=IntegerDistribution([0, 1], [1, 1]),
        b_law=IntegerDistribution([0, 1], [1, 1]),
        alpha0=alpha0,
        beta0=beta0,
    )


@pytest.fixture
def figure1():
    return figure1_scheme()


@pytest.fixture
def upper_safe():
    return upper_safe_scheme()


FIGURE1_CONFIG = {
    "A": 7,
    "B": 2,
    "a": {"values": [-5, -2, 4, 7], "weights": [1, 2, 2, 1]},
    "b": {"values": [-5, 0, 4], "weights": [2, 3, 1]},
    "alpha0": 30,
    "beta0": 30,
}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
