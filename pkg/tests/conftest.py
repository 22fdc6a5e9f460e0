from pathlib import Path

import pytest

from infratop.paper_suite import default_data_dir

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def data_dir() -> Path:
    return default_data_dir()


@pytest.fixture
def report_line():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
