import sys

import pytest

from pfptopo.graph import Graph


@pytest.fixture
def k4():
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def star5():
    """Hub 0 with five leaves."""
    return Graph.from_edges(6, [(0, i) for i in range(1, 6)])


@pytest.fixture
def path3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def ring8():
    return Graph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)])


@pytest.fixture
def c4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.VERDICTS.values():
        terminalreporter.write_line(line)
