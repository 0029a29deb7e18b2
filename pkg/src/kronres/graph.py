"""Weighted directed graphs, their Laplacians and structural predicates.

Nodes are 0-based integers. A graph is stored as a dense nonnegative
adjacency matrix ``adj`` where ``adj[i, j]`` is the weight of the edge
``i -> j`` and ``adj[i, i]`` the weight of a self-loop at ``i``.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from .exceptions import GraphFormatError, PreconditionError

__all__ = [
    "WeightedDigraph",
    "build_graph",
    "degrees",
    "loopy_laplacian",
    "loopless_laplacian",
    "graph_from_loopy",
    "node_subset",
    "complement",
    "reachable_from",
    "reaching",
    "is_reachable_subset",
    "is_strongly_connected",
    "is_weight_balanced",
    "transition_matrix",
    "induced_subgraph",
]


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Directed graph with nonnegative edge weights and optional self-loops."""

    adj: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adj, dtype=float)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] < 1:
            raise GraphFormatError(f"adjacency must be a nonempty square matrix, got shape {adj.shape}")
        if not np.all(np.isfinite(adj)):
            raise GraphFormatError("adjacency contains non-finite entries")
        if np.any(adj < 0):
            raise GraphFormatError("adjacency contains negative weights")
        adj.setflags(write=False)
        object.__setattr__(self, "adj", adj)

    @property
    def n(self):
        return self.adj.shape[0]

    @property
    def self_loops(self):
        return np.diag(self.adj).copy()

    @property
    def has_self_loops(self):
        return bool(np.any(np.diag(self.adj) > 0))

    def edges(self):
        """List of ``(i, j, weight)`` triples in row-major order."""
        rows, cols = np.nonzero(self.adj)
        return [(int(i), int(j), float(self.adj[i, j])) for i, j in zip(rows, cols)]

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.adj.shape == other.adj.shape and np.array_equal(self.adj, other.adj)

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, edges={len(self.edges())})"


def build_graph(n, edges):
    """Build a graph on ``n`` nodes from ``(from, to, weight)`` triples.

    Weights must be strictly positive and each ordered pair may appear only
    once; duplicates are rejected rather than summed.
    """
    n = int(n)
    if n < 1:
        raise GraphFormatError(f"node count must be >= 1, got {n}")
    adj = np.zeros((n, n))
    seen = set()
    for edge in edges:
        try:
            i, j, w = edge
        except (TypeError, ValueError):
            raise GraphFormatError(f"edge must be a (from, to, weight) triple, got {edge!r}") from None
        if int(i) != i or int(j) != j:
            raise GraphFormatError(f"node indices must be integers, got ({i}, {j})")
        i, j, w = int(i), int(j), float(w)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphFormatError(f"edge ({i}, {j}) out of range for n={n}", nodes=[k for k in (i, j) if 0 <= k < n])
        if not (w > 0) or not np.isfinite(w):
            raise GraphFormatError(f"edge ({i}, {j}) has nonpositive or non-finite weight {w}", nodes=(i, j))
        if (i, j) in seen:
            raise GraphFormatError(f"duplicate edge ({i}, {j})", nodes=(i, j))
        seen.add((i, j))
        adj[i, j] = w
    return WeightedDigraph(adj)


def degrees(g):
    """Out-degree vector, self-loops included."""
    return g.adj.sum(axis=1)


def loopy_laplacian(g):
    """``Q = D - A + diag(A_ii)``; row ``i`` sums to the self-loop weight at ``i``."""
    q = -g.adj.copy()
    np.fill_diagonal(q, 0.0)
    q[np.diag_indices(g.n)] = degrees(g)
    return q


def loopless_laplacian(g):
    """``L = D - A``; self-loops cancel and every row sums to zero."""
    off = g.adj.copy()
    np.fill_diagonal(off, 0.0)
    l = -off
    l[np.diag_indices(g.n)] = off.sum(axis=1)
    return l


def graph_from_loopy(q, tol=1e-9):
    """Recover the graph whose loopy Laplacian is ``q``.

    Entries violating the Z-matrix or nonnegative-row-sum conditions by at
    most ``tol`` times the largest entry are treated as rounding and clipped.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {q.shape}")
    scale = max(1.0, float(np.abs(q).max(initial=0.0)))
    adj = -q.copy()
    np.fill_diagonal(adj, 0.0)
    loops = q.sum(axis=1)
    if adj.min(initial=0.0) < -tol * scale:
        i, j = np.unravel_index(np.argmin(adj), adj.shape)
        raise PreconditionError(f"not a Z-matrix: positive off-diagonal entry at ({i}, {j})", nodes=(i, j))
    if loops.min() < -tol * scale:
        i = int(np.argmin(loops))
        raise PreconditionError(f"row {i} has negative sum {loops[i]:.3g}", nodes=(i,))
    adj[np.diag_indices(q.shape[0])] = loops
    return WeightedDigraph(np.clip(adj, 0.0, None))


def node_subset(alpha, n, min_size=1, proper=False):
    """Validate a boundary set and return it as a sorted tuple of indices."""
    try:
        items = [int(a) for a in alpha]
    except TypeError:
        raise PreconditionError(f"node subset must be iterable, got {alpha!r}") from None
    if len(set(items)) != len(items):
        raise PreconditionError(f"node subset has duplicates: {items}")
    bad = [a for a in items if not 0 <= a < n]
    if bad:
        raise PreconditionError(f"node indices {bad} out of range for n={n}")
    if len(items) < min_size:
        raise PreconditionError(f"node subset needs at least {min_size} nodes, got {len(items)}")
    if proper and len(items) == n:
        raise PreconditionError("node subset must be a proper subset")
    return tuple(sorted(items))


def complement(alpha, n):
    members = set(alpha)
    return tuple(i for i in range(n) if i not in members)


def _bfs(neighbors, seeds):
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        u = queue.popleft()
        for v in neighbors(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def reachable_from(g, sources):
    """Nodes reachable from ``sources`` by directed paths (sources included)."""
    support = g.adj > 0
    return _bfs(lambda u: np.flatnonzero(support[u]).tolist(), list(sources))


def reaching(g, targets):
    """Nodes with a directed path to some node of ``targets`` (targets included)."""
    support = g.adj > 0
    return _bfs(lambda u: np.flatnonzero(support[:, u]).tolist(), list(targets))


def is_reachable_subset(g, alpha):
    """True iff every node outside ``alpha`` has a directed path into ``alpha``."""
    alpha = node_subset(alpha, g.n)
    return len(reaching(g, alpha)) == g.n


def is_strongly_connected(g):
    return len(reachable_from(g, [0])) == g.n and len(reaching(g, [0])) == g.n


def is_weight_balanced(g, tol=1e-9):
    """True iff in-degree equals out-degree at every node, up to relative ``tol``."""
    out_deg = g.adj.sum(axis=1)
    in_deg = g.adj.sum(axis=0)
    return bool(np.all(np.abs(out_deg - in_deg) <= tol * np.maximum(1.0, out_deg)))


def transition_matrix(g):
    """Row-stochastic ``P = D^{-1} A``.

    Rows with no outgoing edges get a virtual self-loop (``P_ii = 1``). The
    graph itself is not modified.
    """
    deg = degrees(g)
    p = np.zeros_like(g.adj)
    live = deg > 0
    p[live] = g.adj[live] / deg[live, None]
    dead = np.flatnonzero(~live)
    p[dead, dead] = 1.0
    return p


def induced_subgraph(g, nodes):
    """Subgraph on ``nodes`` (in the given order) with all edges among them."""
    idx = np.asarray(nodes, dtype=int)
    return WeightedDigraph(g.adj[np.ix_(idx, idx)])
