import numpy as np
import pytest

from aalpha.graph import complete_graph, cycle_graph, from_edge_list
from aalpha.perturbations import random_connected_graph

ALPHAS = (0.0, 0.3, 0.5, 0.9)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def cube():
    return from_edge_list(8, [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1])


def random_corpus(seed=2024, size=200):
    """Random connected graphs with n <= 12, a few regular ones mixed in."""
    rng = np.random.default_rng(seed)
    regular = [cycle_graph(5), cycle_graph(8), complete_graph(4), complete_graph(7), petersen(), cube(),
               from_edge_list(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)])]
    graphs = list(regular)
    while len(graphs) < size:
        n = int(rng.integers(2, 13))
        graphs.append(random_connected_graph(rng, n, int(rng.integers(0, 2 * n))))
    return graphs


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
