import pytest

from helpers import ACCEPTANCE
from homcalc.specfile import fixture_names, load_fixture


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture(scope="session")
def fixtures():
    return {n: load_fixture(n) for n in fixture_names()}
