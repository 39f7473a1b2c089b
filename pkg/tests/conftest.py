import numpy as np
import pytest

from starwalk.decompose import Star
from starwalk.graph import Graph, random_sparse_graph


def random_star(rng, n, max_leaves=8):
    dim = 2**n
    size = int(rng.integers(1, min(max_leaves, dim - 1) + 1))
    picks = rng.choice(dim, size + 1, replace=False)
    return Star(int(picks[0]), tuple(int(x) for x in picks[1:]))


def random_graph(rng, max_n=32, max_d=3):
    n = int(rng.integers(2, max_n + 1))
    d = int(rng.integers(1, max_d + 1))
    return random_sparse_graph(n, d, rng)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS

    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
