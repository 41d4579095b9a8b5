from fractions import Fraction

import pytest

from pgca import WhittakerHom, make_module

PHI = WhittakerHom.of(1, -1, 2, 3, 5)
XI = (Fraction(1), Fraction(0), Fraction(2))


@pytest.fixture
def phi():
    return PHI


@pytest.fixture
def generic():
    return make_module("generic", PHI, xi=XI)


@pytest.fixture
def central():
    return make_module("universal-central", PHI)


@pytest.fixture
def centerless():
    return make_module("universal-centerless", PHI)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
