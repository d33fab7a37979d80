from __future__ import annotations

import pytest

from semicross.io import load_workspace

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def pe():
    return load_workspace("paper-example")


@pytest.fixture(scope="session")
def cyc():
    return load_workspace("CYC")
