"""Effective conductance and resistance of directed graphs.

The conductance from ``a`` to ``b`` is the ``(a, a)`` entry of the Kron
reduction of the loop-less Laplacian onto ``{a, b}``. It equals the
out-degree of ``a`` times the probability that a random walk started at
``a`` reaches ``b`` before coming back to ``a``.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    NotBalancedError,
    NotReachableError,
    NotStronglyConnectedError,
    PreconditionError,
    SingularMatrixError,
)
from .graph import (
    degrees,
    induced_subgraph,
    is_reachable_subset,
    is_strongly_connected,
    is_weight_balanced,
    loopless_laplacian,
    reachable_from,
    reaching,
    transition_matrix,
)
from .linalg import balanced_pinv, centering_matrix, is_psd, lu_solve, pinv, schur_complement

__all__ = [
    "ExtendedResistance",
    "voltage_vector",
    "effective_conductance",
    "effective_resistance",
    "resistance_general",
    "escape_probability",
    "first_passage_edge_probability",
    "stationary_distribution",
    "balancing",
    "resistance_balanced_pinv",
    "resistance_strongly_connected",
    "resistance_matrix",
    "metric_matrix",
    "total_resistance",
    "total_resistance_trace",
    "edm_gram",
    "edm_check",
]


@dataclass(frozen=True)
class ExtendedResistance:
    """Resistance that is finite and positive, infinite, or undefined."""

    kind: str
    value: float = float("nan")

    def __post_init__(self):
        if self.kind not in ("finite", "infinite", "undefined"):
            raise ValueError(f"unknown resistance kind {self.kind!r}")
        if self.kind == "finite" and not self.value > 0:
            raise ValueError(f"finite resistance must be positive, got {self.value}")

    @classmethod
    def finite(cls, value):
        return cls("finite", float(value))

    @classmethod
    def infinite(cls):
        return cls("infinite", float("inf"))

    @classmethod
    def undefined(cls):
        return cls("undefined")

    def __float__(self):
        # undefined maps to NaN so that matrices of resistances stay numeric
        return self.value

    def to_json(self):
        if self.kind == "finite":
            return self.value
        return "inf" if self.kind == "infinite" else "undefined"


def _check_pair(g, a, b):
    a, b = int(a), int(b)
    if a == b:
        raise PreconditionError("source and sink must differ", nodes=(a,))
    for x in (a, b):
        if not 0 <= x < g.n:
            raise PreconditionError(f"node {x} out of range for n={g.n}")
    return a, b


def _require_reachable(g, a, b):
    if not is_reachable_subset(g, (a, b)):
        stuck = sorted(set(range(g.n)) - reaching(g, (a, b)))
        raise NotReachableError(
            f"{{a, b}} is not a reachable subset: nodes {stuck} reach neither", nodes=stuck
        )


def voltage_vector(g, a, b):
    """Probability, for each start node, of hitting ``a`` before ``b``.

    Entry ``a`` is 1 and entry ``b`` is 0; the rest solve the interior block
    of the loop-less Laplacian against the column of weights into ``a``.
    """
    a, b = _check_pair(g, a, b)
    _require_reachable(g, a, b)
    interior = [x for x in range(g.n) if x not in (a, b)]
    v = np.zeros(g.n)
    v[a] = 1.0
    if interior:
        l = loopless_laplacian(g)
        v[interior] = lu_solve(l[np.ix_(interior, interior)], g.adj[interior, a]).solution
    if v.min() < -1e-9 or v.max() > 1 + 1e-9:
        warnings.warn(f"voltage outside [0, 1] beyond rounding: [{v.min():.3g}, {v.max():.3g}]", RuntimeWarning)
    return v


def effective_conductance(g, a, b):
    """``C(a, b) = (L / L[{a,b}ᶜ, {a,b}ᶜ])_{aa}``; self-loops do not matter."""
    a, b = _check_pair(g, a, b)
    _require_reachable(g, a, b)
    try:
        reduced = schur_complement(loopless_laplacian(g), [a, b])
    except SingularMatrixError as exc:
        raise NotReachableError(str(exc), nodes=(a, b)) from exc
    return float(reduced[0, 0])


def effective_resistance(g, a, b):
    c = effective_conductance(g, a, b)
    if c <= 0:
        raise NotReachableError(f"no path from node {a} to node {b}", nodes=(a, b))
    return 1.0 / c


def resistance_general(g, a, b):
    """Resistance from ``a`` to ``b`` in an arbitrary digraph.

    Infinite when ``b`` is unreachable from ``a``. Otherwise computed on the
    subgraph reachable from ``a`` if every node there can reach ``a`` or
    ``b``; undefined when some node cannot.
    """
    a, b = _check_pair(g, a, b)
    forward = reachable_from(g, [a])
    if b not in forward:
        return ExtendedResistance.infinite()
    nodes = sorted(forward)
    sub = induced_subgraph(g, nodes)
    sa, sb = nodes.index(a), nodes.index(b)
    if not is_reachable_subset(sub, (sa, sb)):
        return ExtendedResistance.undefined()
    return ExtendedResistance.finite(effective_resistance(sub, sa, sb))


def _walk_degree(g, a):
    d = degrees(g)[a]
    return d if d > 0 else 1.0  # virtual self-loop


def escape_probability(g, a, b):
    """Probability that the walk from ``a`` reaches ``b`` before returning to ``a``."""
    c = effective_conductance(g, a, b)
    return c / _walk_degree(g, int(a))


def first_passage_edge_probability(g, a, b):
    """Probability that the walk from ``a`` first reaches ``b`` through the edge ``a -> b``."""
    a, b = _check_pair(g, a, b)
    if not g.adj[a, b] > 0:
        raise PreconditionError(f"no edge from {a} to {b}", nodes=(a, b))
    return float(g.adj[a, b]) / effective_conductance(g, a, b)


def stationary_distribution(p):
    """Invariant distribution of an irreducible row-stochastic matrix.

    Solves ``(Pᵀ - I) φ = 0`` with the row ``1ᵀ φ = 1`` appended.
    """
    p = np.asarray(p, dtype=float)
    n = p.shape[0]
    system = np.vstack([p.T - np.eye(n), np.ones((1, n))])
    rhs = np.zeros(n + 1)
    rhs[-1] = 1.0
    phi, _, rank, _ = np.linalg.lstsq(system, rhs, rcond=None)
    if rank < n:
        raise SingularMatrixError("stationary distribution is not unique (reducible chain)")
    return phi


def balancing(g):
    """Diagonal of the positive matrix ``M`` making ``M L`` weight balanced.

    Normalized so that ``sum_i m_i D_ii = 1``; then ``m_i D_ii`` is the
    stationary distribution of the random walk.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("balancing matrix requires a strongly connected graph")
    if g.n == 1:
        return np.array([1.0 / _walk_degree(g, 0)])
    phi = stationary_distribution(transition_matrix(g))
    return phi / degrees(g)


def _unit_diff(n, a, b):
    e = np.zeros(n)
    e[a], e[b] = 1.0, -1.0
    return e


def resistance_balanced_pinv(g, a, b, gamma=1.0):
    """``(e_a - e_b)ᵀ L† (e_a - e_b)`` for strongly connected, weight-balanced graphs."""
    a, b = _check_pair(g, a, b)
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("graph is not strongly connected")
    if not is_weight_balanced(g):
        raise NotBalancedError("graph is not weight balanced")
    e = _unit_diff(g.n, a, b)
    return float(e @ balanced_pinv(loopless_laplacian(g), gamma) @ e)


def resistance_strongly_connected(g, a, b):
    """``m_a (e_a - e_b)ᵀ (M L)† (e_a - e_b)`` for strongly connected graphs."""
    a, b = _check_pair(g, a, b)
    m = balancing(g)
    e = _unit_diff(g.n, a, b)
    return float(m[a] * (e @ pinv(m[:, None] * loopless_laplacian(g)) @ e))


def _quadratic_resistances(lp, scale=None):
    # R[a, b] = lp_aa + lp_bb - lp_ab - lp_ba, optionally scaled per row
    d = np.diag(lp)
    r = d[:, None] + d[None, :] - lp - lp.T
    if scale is not None:
        r = scale[:, None] * r
    np.fill_diagonal(r, 0.0)
    return r


def resistance_matrix(g, method="schur"):
    """All ordered-pair resistances, zero on the diagonal.

    ``method`` selects the route: ``"schur"`` (definition, any graph; infinite
    entries are ``inf`` and undefined ones ``nan``), ``"pinv"`` (pseudoinverse
    of a weight-balanced strongly connected graph) or ``"balanced"``
    (balancing matrix, any strongly connected graph).
    """
    n = g.n
    if method == "schur":
        r = np.zeros((n, n))
        strong = is_strongly_connected(g)
        for a in range(n):
            for b in range(n):
                if a != b:
                    r[a, b] = effective_resistance(g, a, b) if strong else float(resistance_general(g, a, b))
        return r
    if method == "pinv":
        if not is_strongly_connected(g):
            raise NotStronglyConnectedError("graph is not strongly connected")
        if not is_weight_balanced(g):
            raise NotBalancedError("graph is not weight balanced")
        return _quadratic_resistances(balanced_pinv(loopless_laplacian(g)))
    if method == "balanced":
        m = balancing(g)
        return _quadratic_resistances(pinv(m[:, None] * loopless_laplacian(g)), scale=m)
    raise ValueError(f"unknown method {method!r}")


def metric_matrix(g):
    """Distances ``sqrt(R(i, j) / m_i)`` on a strongly connected graph.

    These are the square-root resistances of the balanced graph ``M L``;
    they are symmetric and form a Euclidean distance matrix.
    """
    m = balancing(g)
    r = resistance_matrix(g, "schur")
    return np.sqrt(r / m[:, None])


def total_resistance(g):
    """Half the sum of all ordered-pair resistances."""
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("total resistance requires a strongly connected graph")
    return 0.5 * float(resistance_matrix(g, "schur").sum())


def total_resistance_trace(g):
    """``n tr(L†)``, equal to the total resistance on weight-balanced graphs."""
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("graph is not strongly connected")
    if not is_weight_balanced(g):
        raise NotBalancedError("graph is not weight balanced")
    return g.n * float(np.trace(pinv(loopless_laplacian(g))))


def edm_gram(r2):
    """Centered Gram matrix ``-1/2 Π r2 Π`` of a squared-distance matrix."""
    r2 = np.asarray(r2, dtype=float)
    pi = centering_matrix(r2.shape[0])
    return -0.5 * pi @ r2 @ pi


def edm_check(r2, tol=1e-8):
    """True iff ``r2`` is a Euclidean distance matrix (squared distances).

    Uses the classical criterion that ``-1/2 Π r2 Π`` is positive semidefinite.
    """
    r2 = np.asarray(r2, dtype=float)
    scale = max(1.0, np.abs(r2).max(initial=0.0))
    if r2.ndim != 2 or r2.shape[0] != r2.shape[1]:
        raise PreconditionError("distance matrix must be square")
    if not np.allclose(r2, r2.T, rtol=0.0, atol=tol * scale):
        raise PreconditionError("distance matrix is not symmetric")
    if np.abs(np.diag(r2)).max(initial=0.0) > tol * scale:
        raise PreconditionError("distance matrix has a nonzero diagonal")
    gram = edm_gram((r2 + r2.T) / 2)
    return is_psd(gram, tol)
