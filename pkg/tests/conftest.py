import pytest

from lcwb.ideal import Ideal
from lcwb.poly import PolynomialRing


@pytest.fixture
def R1():
    return PolynomialRing(["x"])


@pytest.fixture
def R2():
    return PolynomialRing(["x", "y"])


@pytest.fixture
def R3():
    return PolynomialRing(["x", "y", "z"])


def ideal(ring, *gens):
    return Ideal(ring, [ring.coerce(g) for g in gens])


# acceptance lines, echoed in the terminal summary so they show without -s
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
