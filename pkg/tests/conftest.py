import pytest

import helpers
from helpers import h1


@pytest.fixture
def H1():
    return h1()


def pytest_terminal_summary(terminalreporter):
    if helpers.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in helpers.REPORT:
            terminalreporter.write_line(line)
