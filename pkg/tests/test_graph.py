import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from kronres import (
    GraphFormatError,
    PreconditionError,
    WeightedDigraph,
    build_graph,
    graph_from_loopy,
    is_reachable_subset,
    is_strongly_connected,
    is_weight_balanced,
    loopless_laplacian,
    loopy_laplacian,
    transition_matrix,
)
from kronres.graph import complement, induced_subgraph, node_subset, reachable_from, reaching

from conftest import Q_DIRECTED

CYCLE3 = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float)
PATH3 = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=float)

adjacency = st.integers(1, 7).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.one_of(st.just(0.0), st.floats(0.01, 100.0)))
)


def test_build_graph_small():
    np.testing.assert_array_equal(build_graph(2, [(0, 1, 1.0)]).adj, [[0, 1], [0, 0]])
    np.testing.assert_array_equal(build_graph(1, []).adj, [[0]])


def test_directed_example_round_trip(directed6):
    assert sorted((i + 1, j + 1) for i, j, _ in directed6.edges()) == [
        (1, 5), (2, 6), (3, 2), (4, 3), (4, 4), (5, 3), (6, 1)
    ]
    np.testing.assert_array_equal(loopy_laplacian(directed6), Q_DIRECTED)
    g = build_graph(6, directed6.edges())
    assert g == directed6


@pytest.mark.parametrize(
    "edges, match",
    [
        ([(0, 2, 1.0)], "out of range"),
        ([(0, 1, 0.0)], "nonpositive"),
        ([(0, 1, -1.0)], "nonpositive"),
        ([(0, 1, np.inf)], "non-finite"),
        ([(0, 1, 1.0), (0, 1, 2.0)], "duplicate"),
        ([(0, 1)], "triple"),
    ],
)
def test_build_graph_rejects(edges, match):
    with pytest.raises(GraphFormatError, match=match):
        build_graph(2, edges)


def test_weighted_digraph_validation():
    with pytest.raises(GraphFormatError):
        WeightedDigraph(np.zeros((2, 3)))
    with pytest.raises(GraphFormatError):
        WeightedDigraph(np.array([[0, -1], [0, 0]]))
    with pytest.raises(GraphFormatError):
        WeightedDigraph(np.array([[0, np.nan], [0, 0]]))
    g = WeightedDigraph([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        g.adj[0, 1] = 5.0


def test_laplacians_by_hand():
    np.testing.assert_array_equal(loopy_laplacian(WeightedDigraph([[0, 2], [3, 0]])), [[2, -2], [-3, 3]])
    q = loopy_laplacian(WeightedDigraph([[1, 1], [0, 1]]))
    np.testing.assert_array_equal(q, [[2, -1], [0, 1]])
    np.testing.assert_array_equal(q.sum(axis=1), [1, 1])
    np.testing.assert_array_equal(loopless_laplacian(WeightedDigraph([[1, 1], [0, 1]])), [[1, -1], [0, 0]])
    np.testing.assert_array_equal(loopless_laplacian(WeightedDigraph([[0, 2.5], [0.5, 0]])), [[2.5, -2.5], [-0.5, 0.5]])
    np.testing.assert_array_equal(loopless_laplacian(WeightedDigraph(CYCLE3)), [[1, -1, 0], [0, 1, -1], [-1, 0, 1]])


def test_graph_from_loopy():
    np.testing.assert_array_equal(graph_from_loopy([[2, -1], [0, 1]]).adj, [[1, 1], [0, 1]])
    np.testing.assert_array_equal(graph_from_loopy(np.zeros((2, 2))).adj, np.zeros((2, 2)))
    with pytest.raises(PreconditionError, match="Z-matrix"):
        graph_from_loopy([[1, 1], [0, 1]])
    with pytest.raises(PreconditionError, match="negative sum"):
        graph_from_loopy([[1, -2], [0, 1]])


def test_graph_from_loopy_clips_rounding():
    g = graph_from_loopy([[1.0, -1.0 - 1e-14], [-1.0, 1.0]])
    assert g.adj.min() >= 0.0


@given(adjacency)
def test_loopy_round_trip(adj):
    g = WeightedDigraph(adj)
    back = graph_from_loopy(loopy_laplacian(g))
    np.testing.assert_allclose(back.adj, adj, rtol=1e-12, atol=1e-12 * adj.max(initial=1.0))


@given(adjacency)
def test_laplacian_invariants(adj):
    g = WeightedDigraph(adj)
    l, q = loopless_laplacian(g), loopy_laplacian(g)
    np.testing.assert_allclose(l.sum(axis=1), 0.0, atol=1e-9 * max(1.0, adj.max()))
    np.testing.assert_allclose(q.sum(axis=1), np.diag(adj), atol=1e-9 * max(1.0, adj.max()))
    off = ~np.eye(g.n, dtype=bool)
    assert np.all(q[off] <= 0)
    np.testing.assert_allclose(q - l, np.diag(np.diag(adj)), rtol=0, atol=1e-12 * max(1.0, adj.sum()))


def test_reachability():
    path = WeightedDigraph(PATH3)
    assert is_reachable_subset(path, [2])
    assert not is_reachable_subset(path, [0])
    assert reachable_from(path, [1]) == {1, 2}
    assert reaching(path, [1]) == {0, 1}
    assert is_reachable_subset(graph_from_loopy(Q_DIRECTED), [0, 1, 2])


def test_strong_connectivity():
    assert is_strongly_connected(WeightedDigraph(CYCLE3))
    assert not is_strongly_connected(WeightedDigraph([[0, 1], [0, 0]]))
    assert is_strongly_connected(WeightedDigraph([[0]]))


def test_weight_balance(rng):
    a = rng.uniform(size=(5, 5))
    assert is_weight_balanced(WeightedDigraph(a + a.T))
    assert is_weight_balanced(WeightedDigraph(CYCLE3))
    assert not is_weight_balanced(WeightedDigraph([[0, 1], [0, 0]]))


def test_transition_matrix():
    np.testing.assert_array_equal(transition_matrix(WeightedDigraph([[0, 2], [3, 0]])), [[0, 1], [1, 0]])
    g = WeightedDigraph([[0, 0], [1, 0]])
    np.testing.assert_array_equal(transition_matrix(g), [[1, 0], [1, 0]])
    np.testing.assert_array_equal(g.adj, [[0, 0], [1, 0]])  # virtual loop is not stored
    np.testing.assert_array_equal(transition_matrix(WeightedDigraph(np.ones((2, 2)))), np.full((2, 2), 0.5))


@given(adjacency)
def test_transition_matrix_stochastic(adj):
    p = transition_matrix(WeightedDigraph(adj))
    np.testing.assert_allclose(p.sum(axis=1), 1.0, rtol=0, atol=1e-12)
    assert p.min() >= 0


def test_node_subset():
    assert node_subset([2, 0], 3) == (0, 2)
    assert complement((0, 2), 4) == (1, 3)
    with pytest.raises(PreconditionError, match="duplicates"):
        node_subset([1, 1], 3)
    with pytest.raises(PreconditionError, match="out of range"):
        node_subset([3], 3)
    with pytest.raises(PreconditionError, match="at least 2"):
        node_subset([0], 3, min_size=2)
    with pytest.raises(PreconditionError, match="proper"):
        node_subset([0, 1, 2], 3, proper=True)


def test_induced_subgraph():
    sub = induced_subgraph(WeightedDigraph(CYCLE3), [2, 0])
    np.testing.assert_array_equal(sub.adj, [[0, 1], [0, 0]])


@settings(max_examples=50)
@given(adjacency)
def test_self_loops_do_not_change_connectivity(adj):
    g = WeightedDigraph(adj)
    stripped = adj.copy()
    np.fill_diagonal(stripped, 0.0)
    assert is_strongly_connected(g) == is_strongly_connected(WeightedDigraph(stripped))
