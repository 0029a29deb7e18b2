import numpy as np
import pytest

from kronres import graph_from_loopy

# six-node worked example: directed graph with a self-loop at node 4, and its undirected counterpart
Q_DIRECTED = np.array(
    [
        [1, 0, 0, 0, -1, 0],
        [0, 1, 0, 0, 0, -1],
        [0, -1, 1, 0, 0, 0],
        [0, 0, -1, 2, 0, 0],
        [0, 0, -1, 0, 1, 0],
        [-1, 0, 0, 0, 0, 1],
    ],
    dtype=float,
)
Q_UNDIRECTED = np.array(
    [
        [2, 0, 0, 0, -1, -1],
        [0, 2, -1, 0, 0, -1],
        [0, -1, 3, -1, -1, 0],
        [0, 0, -1, 2, 0, 0],
        [-1, 0, -1, 0, 2, 0],
        [-1, -1, 0, 0, 0, 2],
    ],
    dtype=float,
)
Q_RED_DIRECTED = np.array([[1, 0, -1], [-1, 1, 0], [0, -1, 1]], dtype=float)
Q_RED_UNDIRECTED = np.array([[1, -0.5, -0.5], [-0.5, 1.5, -1], [-0.5, -1, 2]])
BOUNDARY = (0, 1, 2)

# pairwise shortest-path distances of a 4-node graph that does not embed in Euclidean space
SHORTEST_PATH_D = np.array(
    [
        [0, 1, np.sqrt(2), 1],
        [1, 0, 1, 2],
        [np.sqrt(2), 1, 0, 1],
        [1, 2, 1, 0],
    ]
)


@pytest.fixture
def directed6():
    return graph_from_loopy(Q_DIRECTED)


@pytest.fixture
def undirected6():
    return graph_from_loopy(Q_UNDIRECTED)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
