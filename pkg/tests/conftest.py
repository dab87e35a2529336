import pytest

from potdyn import scenarios

ACCEPTANCE_LINES = []


@pytest.fixture
def fig1a():
    return scenarios.preset("fig1a").parameters


@pytest.fixture
def fig2():
    return scenarios.preset("fig2_relative").parameters.build()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
