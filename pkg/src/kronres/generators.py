"""Seeded random graph families used by the test corpora and the demos.

Every function takes a ``numpy.random.Generator`` and returns a
``WeightedDigraph`` (or a matrix, for stochastic chains).
"""

import numpy as np

from .graph import WeightedDigraph, is_reachable_subset

__all__ = [
    "random_digraph",
    "random_strongly_connected",
    "random_balanced",
    "random_rooted",
    "random_undirected",
    "random_reachable_subset",
    "random_doubly_stochastic",
    "random_stochastic",
]


def _weights(rng, shape, low=0.1, high=2.0):
    return rng.uniform(low, high, size=shape)


def random_digraph(rng, n, density=0.4, self_loops=False):
    """Erdős–Rényi style digraph with uniform weights in ``[0.1, 2)``."""
    mask = rng.random((n, n)) < density
    if not self_loops:
        np.fill_diagonal(mask, False)
    return WeightedDigraph(np.where(mask, _weights(rng, (n, n)), 0.0))


def _add_cycle(adj, rng, nodes, uniform=False):
    w = _weights(rng, ())
    for u, v in zip(nodes, np.roll(nodes, -1)):
        adj[u, v] += w if uniform else _weights(rng, ())


def random_strongly_connected(rng, n, density=0.3, self_loops=False):
    """Random digraph overlaid with a Hamiltonian cycle in random order."""
    adj = np.array(random_digraph(rng, n, density, self_loops).adj)
    if n > 1:
        _add_cycle(adj, rng, rng.permutation(n))
    return WeightedDigraph(adj)


def random_balanced(rng, n, extra_cycles=3):
    """Weight-balanced strongly connected digraph built as a sum of weighted cycles."""
    adj = np.zeros((n, n))
    if n == 1:
        return WeightedDigraph(adj)
    # a cycle with one weight on all its edges is balanced, and so is a sum of them
    _add_cycle(adj, rng, rng.permutation(n), uniform=True)
    for _ in range(extra_cycles):
        length = int(rng.integers(2, n + 1))
        _add_cycle(adj, rng, rng.choice(n, size=length, replace=False), uniform=True)
    return WeightedDigraph(adj)


def random_rooted(rng, n, density=0.3):
    """Loop-less digraph in which some node is reachable from every other node.

    A random in-arborescence towards a random root is overlaid on a random
    digraph, so the graph is connected in the sense of having a globally
    reachable node but is usually not strongly connected.
    """
    adj = np.array(random_digraph(rng, n, density).adj)
    order = rng.permutation(n)
    for k in range(1, n):
        parent = order[rng.integers(0, k)]
        if adj[order[k], parent] == 0:
            adj[order[k], parent] = _weights(rng, ())
    return WeightedDigraph(adj)


def random_undirected(rng, n, density=0.4):
    """Connected undirected graph (symmetric adjacency) without self-loops."""
    upper = np.triu(np.where(rng.random((n, n)) < density, _weights(rng, (n, n)), 0.0), 1)
    order = rng.permutation(n)
    for k in range(1, n):
        i, j = sorted((order[k], order[rng.integers(0, k)]))
        if upper[i, j] == 0:
            upper[i, j] = _weights(rng, ())
    return WeightedDigraph(upper + upper.T)


def random_reachable_subset(rng, g, size=None, contains=(), max_tries=1000):
    """Random reachable boundary set with at least two nodes that is a proper subset."""
    n = g.n
    required = list(dict.fromkeys(int(c) for c in contains))
    others = [i for i in range(n) if i not in required]
    for _ in range(max_tries):
        k = size if size is not None else int(rng.integers(max(2, len(required)), n))
        extra = rng.choice(others, size=k - len(required), replace=False).tolist()
        alpha = tuple(sorted(required + extra))
        if is_reachable_subset(g, alpha):
            return alpha
    raise RuntimeError("could not draw a reachable subset")


def _sinkhorn(m, tol=1e-15, max_iter=100_000):
    for _ in range(max_iter):
        m = m / m.sum(axis=1, keepdims=True)
        m = m / m.sum(axis=0, keepdims=True)
        if np.abs(m.sum(axis=1) - 1).max() < tol:
            break
    return m / m.sum(axis=1, keepdims=True)


def random_doubly_stochastic(rng, n):
    """Doubly stochastic matrix from alternating row/column scaling of a
    symmetric positive matrix.
    """
    base = rng.uniform(0.05, 1.0, size=(n, n))
    d = np.diag(rng.uniform(0.5, 2.0, size=n))
    return _sinkhorn(d @ (base + base.T) @ d)


def random_stochastic(rng, n):
    """Positive row-stochastic matrix, generally not doubly stochastic."""
    m = rng.uniform(0.05, 1.0, size=(n, n)) ** 3
    return m / m.sum(axis=1, keepdims=True)
