from pathlib import Path

import pytest

from matbetti.acceptance import example_module
from matbetti.presentation import Presentation

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def module():
    """Two-target module with sources a, b, c, d over QQ."""
    return example_module()


@pytest.fixture
def J_three():
    return Presentation.from_monomial_ideal([[2, 0, 0], [1, 1, 0], [1, 0, 1]])


@pytest.fixture
def J_four():
    return Presentation.from_monomial_ideal([[3, 0, 2], [2, 3, 0], [1, 2, 1], [0, 3, 2]])


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULT_LINES

    if RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in RESULT_LINES:
            terminalreporter.write_line(line)
