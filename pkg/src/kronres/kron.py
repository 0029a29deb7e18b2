"""Kron reduction of directed graphs.

The boundary set ``alpha`` is kept; every other (interior) node is
eliminated by a Schur complement of the loopy Laplacian. The result is again
a loopy Laplacian, so it defines a reduced graph on the boundary nodes.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from .exceptions import NotReachableError, PreconditionError, SingularMatrixError
from .graph import (
    WeightedDigraph,
    complement,
    graph_from_loopy,
    node_subset,
    reaching,
)
from .linalg import PIVOT_TOL, lu_solve, schur_complement, submatrix

__all__ = [
    "KronResult",
    "AccompanyingMatrices",
    "kron_reduce",
    "kron_reduce_iterative",
    "accompanying_matrices",
    "reduce_injections",
    "self_loop_decomposition",
    "has_reduced_edge",
    "grounded_augmentation",
]

PRUNE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class KronResult:
    """Reduced loopy Laplacian ``q_red`` and its graph on the boundary ``alpha``.

    Node ``k`` of ``g_red`` corresponds to node ``alpha[k]`` of the original.
    """

    q_red: np.ndarray
    g_red: WeightedDigraph
    alpha: tuple


@dataclass(frozen=True, eq=False)
class AccompanyingMatrices:
    rac: np.ndarray
    lac: np.ndarray


def _square_laplacian(q):
    q = np.asarray(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise PreconditionError(f"expected a square Laplacian, got shape {q.shape}")
    return q


def _check_boundary(q, alpha):
    """Validate ``alpha`` for reduction and check reachability combinatorially."""
    n = q.shape[0]
    alpha = node_subset(alpha, n, min_size=2, proper=True)
    g = graph_from_loopy(q)
    reached = reaching(g, alpha)
    if len(reached) < n:
        stuck = sorted(set(range(n)) - reached)
        raise NotReachableError(
            f"boundary set is not a reachable subset: interior nodes {stuck} have no path into it",
            nodes=stuck,
        )
    return alpha


def _reduced_graph(q_red):
    g = graph_from_loopy(q_red)
    adj = np.array(g.adj)
    top = adj.max(initial=0.0)
    adj[adj < PRUNE_TOL * top] = 0.0
    return WeightedDigraph(adj)


def kron_reduce(q, alpha):
    """One-shot Kron reduction ``Q / Q[αᶜ, αᶜ]`` onto the boundary ``alpha``.

    ``alpha`` needs at least two nodes, must be a proper subset and must be
    reachable from every interior node.
    """
    q = _square_laplacian(q)
    alpha = _check_boundary(q, alpha)
    try:
        q_red = schur_complement(q, alpha)
    except SingularMatrixError as exc:
        raise NotReachableError(f"interior block is singular: {exc}") from exc
    q_red = q_red + 0.0  # no negative zeros
    return KronResult(q_red, _reduced_graph(q_red), alpha)


def kron_reduce_iterative(q, alpha, order=None):
    """Kron reduction by eliminating interior nodes one at a time.

    ``order`` lists the interior nodes (original labels) in elimination
    order; it defaults to descending index.
    """
    q = _square_laplacian(q)
    alpha = _check_boundary(q, alpha)
    interior = complement(alpha, q.shape[0])
    if order is None:
        order = sorted(interior, reverse=True)
    order = [int(k) for k in order]
    if sorted(order) != list(interior):
        raise PreconditionError(f"elimination order {order} is not a permutation of the interior {list(interior)}")

    labels = list(range(q.shape[0]))
    current = q.copy()
    scale = np.abs(q).max()
    for step, node in enumerate(order, start=1):
        k = labels.index(node)
        pivot = current[k, k]
        if abs(pivot) <= PIVOT_TOL * scale:
            raise SingularMatrixError(
                f"zero pivot eliminating node {node} at step {step}", nodes=(node,)
            )
        keep = [i for i in range(len(labels)) if i != k]
        current = (
            current[np.ix_(keep, keep)]
            - np.outer(current[keep, k], current[k, keep]) / pivot
        )
        del labels[k]
    # remaining labels are the boundary in increasing order
    current = current + 0.0
    return KronResult(current, _reduced_graph(current), alpha)


def accompanying_matrices(q, alpha):
    """Right and left accompanying matrices.

    ``rac = -Q[αᶜ,αᶜ]^{-1} Q[αᶜ,α]`` (interior x boundary) and
    ``lac = -Q[α,αᶜ] Q[αᶜ,αᶜ]^{-1}`` (boundary x interior).
    """
    q = _square_laplacian(q)
    alpha = _check_boundary(q, alpha)
    interior = complement(alpha, q.shape[0])
    block = submatrix(q, interior, interior)
    try:
        rac = -lu_solve(block, submatrix(q, interior, alpha)).solution
        lac = -lu_solve(block.T, submatrix(q, alpha, interior).T).solution.T
    except SingularMatrixError as exc:
        raise NotReachableError(f"interior block is singular: {exc}") from exc
    return AccompanyingMatrices(rac + 0.0, lac + 0.0)  # no negative zeros


def reduce_injections(q, alpha, inj):
    """Boundary injections ``inj[α] + lac · inj[αᶜ]`` of the reduced network."""
    q = _square_laplacian(q)
    inj = np.asarray(inj, dtype=float)
    if inj.shape != (q.shape[0],):
        raise PreconditionError(f"injection vector must have length {q.shape[0]}")
    acc = accompanying_matrices(q, alpha)
    alpha = node_subset(alpha, q.shape[0])
    interior = complement(alpha, q.shape[0])
    return inj[list(alpha)] + acc.lac @ inj[list(interior)]


def self_loop_decomposition(q, alpha):
    """Split ``Q_red`` into loop-less reduction, boundary loops and interior-loop term.

    Returns ``(L_red, diag(A_ii, i in α), S)`` with ``Q_red = L_red + diag + S``
    and ``S`` nonnegative.
    """
    q = _square_laplacian(q)
    alpha = _check_boundary(q, alpha)
    n = q.shape[0]
    interior = list(complement(alpha, n))
    loops = q.sum(axis=1)
    l = q - np.diag(loops)
    l_red = schur_complement(l, alpha)
    l_int = submatrix(l, interior, interior)
    try:
        l_rac = -lu_solve(l_int, submatrix(l, interior, alpha)).solution
        l_lac = -lu_solve(l_int.T, submatrix(l, alpha, interior).T).solution.T
        inner_loops = np.diag(loops[interior])
        # (I + D_int L_int^{-1})^{-1} D_int, solved as a linear system
        middle = np.eye(len(interior)) + inner_loops @ lu_solve(l_int, np.eye(len(interior))).solution
        s = l_lac @ lu_solve(middle, inner_loops).solution @ l_rac
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"self-loop decomposition undefined: {exc}") from exc
    return l_red, np.diag(loops[list(alpha)]), s


def has_reduced_edge(g, alpha, i, j):
    """Whether the reduced graph has an edge ``i -> j``, decided combinatorially.

    True iff ``g`` has a directed path from ``i`` to ``j`` whose intermediate
    nodes all lie outside ``alpha``.
    """
    alpha = node_subset(alpha, g.n)
    if i == j or i not in alpha or j not in alpha:
        raise PreconditionError("i and j must be distinct boundary nodes", nodes=(i, j))
    support = g.adj > 0
    if support[i, j]:
        return True
    boundary = set(alpha)
    seen = set()
    queue = deque(v for v in np.flatnonzero(support[i]).tolist() if v not in boundary)
    seen.update(queue)
    while queue:
        u = queue.popleft()
        if support[u, j]:
            return True
        for v in np.flatnonzero(support[u]).tolist():
            if v not in boundary and v not in seen:
                seen.add(v)
                queue.append(v)
    return False


def grounded_augmentation(q):
    """Loop-less Laplacian of size ``n+1`` with self-loops rewired to a ground node.

    The self-loop at ``i`` becomes a bidirectional edge between ``i`` and the
    new last node, with the same weight.
    """
    q = _square_laplacian(q)
    n = q.shape[0]
    loops = q.sum(axis=1)
    out = np.zeros((n + 1, n + 1))
    out[:n, :n] = q
    out[:n, n] = -loops
    out[n, :n] = -loops
    out[n, n] = loops.sum()
    return out
