import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kneserlab.corpus import complete_graph, complete_uniform, cycle_graph, kneser_graph, petersen_graph  # noqa: E402


def hsets(h):
    return [frozenset(e) for e in h.edge_sets()]


@pytest.fixture(scope="session")
def petersen():
    return petersen_graph()


@pytest.fixture(scope="session")
def c5():
    return cycle_graph(5)


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def kg62():
    return kneser_graph(complete_uniform(6, 2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split()[0])):
            terminalreporter.write_line(line)
