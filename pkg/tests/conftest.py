import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from evomis import parse_metis  # noqa: E402
from evomis.generators import cycle_graph, grid_graph, star_graph  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def p5():
    return parse_metis("5 4\n2\n1 3\n2 4\n3 5\n4\n")


@pytest.fixture
def k3():
    return parse_metis("3 3\n2 3\n1 3\n1 2\n")


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def star4():
    return star_graph(4)


@pytest.fixture
def grid33():
    return grid_graph(3, 3)


@pytest.fixture
def acceptance_report():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

