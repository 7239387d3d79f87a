import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prefonto import document, fixtures  # noqa: E402


@pytest.fixture
def coffee_kb():
    return document.load(fixtures.path("coffee_tea"))


@pytest.fixture
def sweet_kb():
    return document.load(fixtures.path("sweeteners"))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
