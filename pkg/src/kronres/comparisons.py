"""Rival constructions: Lyapunov-based resistance and its symmetrizing Kron
reduction, the resistance distance of an ergodic chain, and the hitting
probability metric.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    NotStronglyConnectedError,
    PreconditionError,
    SingularMatrixError,
)
from .graph import (
    WeightedDigraph,
    is_strongly_connected,
    loopless_laplacian,
    node_subset,
    reaching,
    transition_matrix,
)
from .linalg import (
    centering_matrix,
    lu_solve,
    lyapunov_solve,
    pinv,
    schur_complement,
    submatrix,
    sylvester_minnorm_solve,
)
from .resistance import escape_probability, stationary_distribution

__all__ = [
    "LyapunovResistanceBundle",
    "FundamentalMatrix",
    "projection_basis",
    "lyapunov_bundle",
    "lyapunov_resistance",
    "lyapunov_resistance_matrix",
    "hk_decomposition",
    "kron_reduce_lyapunov",
    "chain_period",
    "fundamental_matrix",
    "resistance_distance",
    "hitting_prob_metric",
]


@dataclass(frozen=True, eq=False)
class LyapunovResistanceBundle:
    """``sigma`` solves the projected Lyapunov equation, ``x = 2 Pᵀ Σ P``, and
    ``lhat_u = x†`` is a symmetric, possibly signed, Laplacian.
    """

    sigma: np.ndarray
    x: np.ndarray
    lhat_u: np.ndarray


@dataclass(frozen=True, eq=False)
class FundamentalMatrix:
    f: np.ndarray
    phi: np.ndarray


def projection_basis(n, kind="qr"):
    """Orthonormal ``(n-1) x n`` basis of the complement of the ones vector.

    ``kind="qr"`` orthonormalizes the first ``n-1`` columns of ``I - 11ᵀ/n``;
    ``kind="helmert"`` returns the Helmert contrasts. Both are deterministic.
    """
    n = int(n)
    if n < 2:
        raise PreconditionError(f"projection basis needs n >= 2, got {n}")
    if kind == "qr":
        q, r = np.linalg.qr(centering_matrix(n)[:, : n - 1])
        q = q * np.sign(np.diag(r))  # fix signs so the basis is unique
        return q.T
    if kind == "helmert":
        p = np.zeros((n - 1, n))
        for k in range(1, n):
            p[k - 1, :k] = 1.0
            p[k - 1, k] = -k
            p[k - 1] /= np.sqrt(k * (k + 1))
        return p
    raise ValueError(f"unknown basis kind {kind!r}")


def _check_laplacian(l):
    l = np.asarray(l, dtype=float)
    if l.ndim != 2 or l.shape[0] != l.shape[1] or l.shape[0] < 2:
        raise PreconditionError(f"expected a square Laplacian with n >= 2, got shape {l.shape}")
    return l


def _lyapunov_from_laplacian(l, basis=None):
    l = _check_laplacian(l)
    n = l.shape[0]
    p = projection_basis(n) if basis is None else np.asarray(basis, dtype=float)
    if p.shape != (n - 1, n):
        raise PreconditionError(f"projection basis must have shape {(n - 1, n)}")
    reduced = p @ l @ p.T
    try:
        sigma = lyapunov_solve(reduced, np.eye(n - 1))
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"Lyapunov equation has no unique solution (graph not connected?): {exc}") from exc
    sigma = (sigma + sigma.T) / 2
    x = 2.0 * p.T @ sigma @ p
    x = (x + x.T) / 2
    return LyapunovResistanceBundle(sigma, x, pinv(x))


def _graph_laplacian(g):
    if g.has_self_loops:
        raise PreconditionError("Lyapunov resistance is defined for graphs without self-loops")
    if g.n < 2:
        raise PreconditionError("Lyapunov resistance needs at least two nodes")
    if not any(len(reaching(g, [k])) == g.n for k in range(g.n)):
        raise PreconditionError("graph has no globally reachable node")
    return loopless_laplacian(g)


def lyapunov_bundle(g, basis=None):
    return _lyapunov_from_laplacian(_graph_laplacian(g), basis)


def _quadratic(x, a, b):
    return float(x[a, a] + x[b, b] - x[a, b] - x[b, a])


def lyapunov_resistance(g, a, b, basis=None):
    """``(e_a - e_b)ᵀ X (e_a - e_b)`` with ``X`` from the projected Lyapunov equation.

    Symmetric in ``a`` and ``b`` and independent of the projection basis.
    """
    return _quadratic(lyapunov_bundle(g, basis).x, int(a), int(b))


def lyapunov_resistance_matrix(g, basis=None):
    """All Lyapunov resistances of a graph, or of a Laplacian matrix.

    A matrix argument may have signed entries, as produced by
    ``kron_reduce_lyapunov``.
    """
    l = _graph_laplacian(g) if isinstance(g, WeightedDigraph) else g
    x = _lyapunov_from_laplacian(l, basis).x
    d = np.diag(x)
    r = d[:, None] + d[None, :] - x - x.T
    np.fill_diagonal(r, 0.0)
    return r


def _hk_from_laplacian(l):
    l = _check_laplacian(l)
    bundle = _lyapunov_from_laplacian(l)
    projected = centering_matrix(l.shape[0]) @ l
    h = l @ pinv(projected)
    k = sylvester_minnorm_solve(projected, 0.5 * (projected - projected.T))
    return h, k, bundle.lhat_u


def hk_decomposition(g):
    """Factors ``(H, K, L̂_u)`` with ``L = H (I + 2K) L̂_u``.

    ``H = L (Π L)†`` and ``K`` is the minimum-norm solution of
    ``(Π L) K + K (Π L)ᵀ = ((Π L) - (Π L)ᵀ) / 2``.
    """
    return _hk_from_laplacian(_graph_laplacian(g))


def kron_reduce_lyapunov(g, alpha):
    """Symmetrizing Kron reduction ``H' (I + 2K') (L̂_u / L̂_u[αᶜ, αᶜ])``.

    ``H' = H[α,α] Π`` and ``K' = K[α,α] Π``. The result keeps the Lyapunov
    resistance between boundary nodes but may have positive off-diagonal
    entries, i.e. negative edge weights.
    """
    l = _graph_laplacian(g)
    alpha = node_subset(alpha, g.n, min_size=2, proper=True)
    h, k, lhat_u = _hk_from_laplacian(l)
    try:
        lhat_red = schur_complement(lhat_u, alpha)
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"interior block of the symmetrized Laplacian is singular: {exc}") from exc
    pi = centering_matrix(len(alpha))
    h_red = submatrix(h, alpha, alpha) @ pi
    k_red = submatrix(k, alpha, alpha) @ pi
    return h_red @ (np.eye(len(alpha)) + 2.0 * k_red) @ lhat_red


def chain_period(p):
    """Period of an irreducible chain: gcd of ``level(u) + 1 - level(v)`` over
    all transitions, with levels from a breadth-first search.
    """
    support = np.asarray(p) > 0
    n = support.shape[0]
    level = np.full(n, -1)
    level[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.flatnonzero(support[u]):
                if level[v] < 0:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    rows, cols = np.nonzero(support)
    return int(np.gcd.reduce(np.abs(level[rows] + 1 - level[cols])))


def fundamental_matrix(p):
    """``F = (I - P + Φ)^{-1}`` of an irreducible aperiodic chain."""
    p = np.asarray(p, dtype=float)
    n = p.shape[0]
    if p.ndim != 2 or p.shape != (n, n) or np.any(p < 0) or not np.allclose(p.sum(axis=1), 1.0, atol=1e-9):
        raise PreconditionError("expected a square row-stochastic matrix")
    if not is_strongly_connected(WeightedDigraph(p)):
        raise PreconditionError("chain is reducible")
    period = chain_period(p)
    if period != 1:
        raise PreconditionError(f"chain is periodic with period {period}")
    try:
        phi = stationary_distribution(p)
        f = lu_solve(np.eye(n) - p + np.tile(phi, (n, 1)), np.eye(n)).solution
    except SingularMatrixError as exc:
        raise SingularMatrixError(f"I - P + Φ is singular: chain is periodic or reducible ({exc})") from exc
    return FundamentalMatrix(f, phi)


def resistance_distance(p):
    """``Ω_ij = F_ii + F_jj - F_ij - F_ji`` from the fundamental matrix."""
    f = fundamental_matrix(p).f
    d = np.diag(f)
    omega = d[:, None] + d[None, :] - f - f.T
    np.fill_diagonal(omega, 0.0)
    return omega


def hitting_prob_metric(g, beta=1.0):
    """``d(i, j) = -log(φ_i^β P_esc(i, j) / φ_j^{1-β})``, zero on the diagonal."""
    if beta < 0.5:
        raise PreconditionError(f"beta must be >= 1/2, got {beta}")
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("hitting probability metric requires a strongly connected graph")
    phi = stationary_distribution(transition_matrix(g))
    n = g.n
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                d[i, j] = -np.log(phi[i] ** beta * escape_probability(g, i, j) / phi[j] ** (1.0 - beta))
    return d
