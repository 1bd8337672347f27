from __future__ import annotations

import pytest

from treetmd.resolution import SensorSet
from treetmd.tree import Tree

from helpers import ACCEPTANCE_LINES, A1, B1, C, S, S2, Z2


@pytest.fixture
def small_instance() -> tuple[Tree, SensorSet]:
    tree = Tree(6, [(S, B1), (B1, Z2), (B1, C), (C, S2), (S, A1)])
    return tree, SensorSet([S, S2], 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
