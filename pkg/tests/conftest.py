import sys

import pytest

from lowlying.hecke import hecke_family
from lowlying.maass import bundled_maass


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running numerical checks")


@pytest.fixture(scope="session")
def phi():
    return bundled_maass()


@pytest.fixture(scope="session")
def family12():
    return hecke_family(12, 2500)


@pytest.fixture(scope="session")
def family24():
    return hecke_family(24, 2500)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
