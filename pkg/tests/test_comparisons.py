import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kronres import (
    PreconditionError,
    WeightedDigraph,
    balancing,
    fundamental_matrix,
    hitting_prob_metric,
    hk_decomposition,
    kron_reduce,
    kron_reduce_lyapunov,
    loopless_laplacian,
    lyapunov_bundle,
    lyapunov_resistance,
    lyapunov_resistance_matrix,
    projection_basis,
    resistance_distance,
    resistance_matrix,
    transition_matrix,
)
from kronres import generators as gen
from kronres.comparisons import chain_period
from kronres.linalg import centering_matrix, pinv

CYCLE3 = WeightedDigraph([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
UNIFORM2 = np.full((2, 2), 0.5)
seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize("kind", ["qr", "helmert"])
@pytest.mark.parametrize("n", [2, 3, 5, 9])
def test_projection_basis_contract(kind, n):
    p = projection_basis(n, kind)
    assert p.shape == (n - 1, n)
    np.testing.assert_allclose(p @ p.T, np.eye(n - 1), atol=1e-12)
    np.testing.assert_allclose(p.T @ p, centering_matrix(n), atol=1e-12)
    np.testing.assert_array_equal(p, projection_basis(n, kind))


def test_projection_basis_two_nodes():
    p = projection_basis(2)
    np.testing.assert_allclose(np.abs(p), [[1 / np.sqrt(2)] * 2])
    assert p[0, 0] == pytest.approx(-p[0, 1])
    with pytest.raises(PreconditionError):
        projection_basis(1)
    with pytest.raises(ValueError):
        projection_basis(3, "nope")


def test_lyapunov_resistance_small():
    assert lyapunov_resistance(WeightedDigraph([[0, 1], [1, 0]]), 0, 1) == pytest.approx(1.0)
    for a, b in itertools.permutations(range(3), 2):
        assert lyapunov_resistance(CYCLE3, a, b) == pytest.approx(lyapunov_resistance(CYCLE3, b, a), abs=1e-9)


def test_lyapunov_preconditions():
    with pytest.raises(PreconditionError, match="self-loops"):
        lyapunov_resistance(WeightedDigraph([[1, 1], [1, 0]]), 0, 1)
    with pytest.raises(PreconditionError, match="globally reachable"):
        lyapunov_resistance(WeightedDigraph([[0, 0], [0, 0]]), 0, 1)
    with pytest.raises(PreconditionError, match="two nodes"):
        lyapunov_bundle(WeightedDigraph([[0]]))


@settings(max_examples=30)
@given(seeds)
def test_lyapunov_undirected_is_pinv(seed):
    rng = np.random.default_rng(seed)
    g = gen.random_undirected(rng, int(rng.integers(2, 9)))
    bundle = lyapunov_bundle(g)
    np.testing.assert_allclose(bundle.x, pinv(loopless_laplacian(g)), atol=1e-10)
    np.testing.assert_allclose(lyapunov_resistance_matrix(g), resistance_matrix(g, "pinv"), atol=1e-8)


@settings(max_examples=30)
@given(seeds)
def test_lyapunov_structure(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    g = gen.random_rooted(rng, n)
    bundle = lyapunov_bundle(g)
    x = bundle.x
    np.testing.assert_allclose(x, x.T, atol=1e-12)
    np.testing.assert_allclose(x.sum(axis=1), 0, atol=1e-8)
    assert np.linalg.eigvalsh(x).min() >= -1e-8
    r = lyapunov_resistance_matrix(loopless_laplacian(g), projection_basis(n, "helmert"))
    np.testing.assert_allclose(r, lyapunov_resistance_matrix(g), atol=1e-8)
    # sqrt of the Lyapunov resistance is a metric
    d = np.sqrt(np.maximum(r, 0))
    slack = d[:, :, None] + d[None, :, :] - d[:, None, :]
    assert slack.min() >= -1e-8
    assert d[~np.eye(n, dtype=bool)].min() > 0


def test_lyapunov_resistance_matrix_matches_pairwise(rng):
    g = gen.random_rooted(rng, 6)
    r = lyapunov_resistance_matrix(g)
    for a, b in itertools.permutations(range(6), 2):
        assert r[a, b] == pytest.approx(lyapunov_resistance(g, a, b), rel=1e-12)


def test_hk_symmetric_graph():
    g = gen.random_undirected(np.random.default_rng(4), 6)
    l = loopless_laplacian(g)
    h, k, lhat = hk_decomposition(g)
    np.testing.assert_allclose(k, 0, atol=1e-12)
    np.testing.assert_allclose(lhat, l, atol=1e-10)
    np.testing.assert_allclose(h @ (np.eye(6) + 2 * k) @ lhat, l, atol=1e-10)


def test_hk_cycle_reconstruction():
    h, k, lhat = hk_decomposition(CYCLE3)
    l = loopless_laplacian(CYCLE3)
    assert np.abs(h @ (np.eye(3) + 2 * k) @ lhat - l).max() <= 1e-8


@settings(max_examples=30)
@given(seeds)
def test_hk_reconstruction_and_closed_form(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    g = gen.random_rooted(rng, n)
    l = loopless_laplacian(g)
    h, k, lhat = hk_decomposition(g)
    assert np.linalg.norm(l - h @ (np.eye(n) + 2 * k) @ lhat) <= 1e-6 * np.linalg.norm(l)
    # minimum-norm K has the closed form (B X - X Bᵀ) / 4 with B = Π L
    b = centering_matrix(n) @ l
    x = lyapunov_bundle(g).x
    np.testing.assert_allclose(k, (b @ x - x @ b.T) / 4, atol=1e-9)


def test_kron_reduce_lyapunov_symmetric_matches_kron(rng):
    g = gen.random_undirected(rng, 7)
    alpha = (0, 2, 3, 6)
    np.testing.assert_allclose(kron_reduce_lyapunov(g, alpha), kron_reduce(loopless_laplacian(g), alpha).q_red, atol=1e-8)


@settings(max_examples=30)
@given(seeds)
def test_kron_reduce_lyapunov_keeps_resistance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 9))
    g = gen.random_rooted(rng, n)
    alpha = tuple(sorted(rng.choice(n, size=int(rng.integers(2, n)), replace=False)))
    reduced = kron_reduce_lyapunov(g, alpha)
    np.testing.assert_allclose(lyapunov_resistance_matrix(reduced), lyapunov_resistance_matrix(g)[np.ix_(alpha, alpha)], atol=1e-6)


def test_kron_reduce_lyapunov_can_create_negative_weights():
    # 1 -> 2, 1 -> 4, 2 -> 3 (weight 2), 2 -> 4, 3 -> 2 in 1-based labels
    adj = np.zeros((4, 4))
    adj[0, 1] = adj[0, 3] = adj[1, 3] = adj[2, 1] = 1.0
    adj[1, 2] = 2.0
    reduced = kron_reduce_lyapunov(WeightedDigraph(adj), (0, 1, 2))
    assert reduced[~np.eye(3, dtype=bool)].max() > 1e-6


def test_chain_period():
    assert chain_period([[0, 1], [1, 0]]) == 2
    assert chain_period(UNIFORM2) == 1
    assert chain_period(transition_matrix(CYCLE3)) == 3


def test_fundamental_matrix():
    fm = fundamental_matrix(UNIFORM2)
    np.testing.assert_allclose(fm.f, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(fm.phi, [0.5, 0.5])
    with pytest.raises(PreconditionError, match="period"):
        fundamental_matrix([[0, 1], [1, 0]])
    with pytest.raises(PreconditionError, match="reducible"):
        fundamental_matrix([[1, 0], [0.5, 0.5]])
    with pytest.raises(PreconditionError, match="stochastic"):
        fundamental_matrix([[0.5, 0.6], [0.5, 0.5]])


@settings(max_examples=30)
@given(seeds)
def test_fundamental_matrix_residual(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    p = gen.random_stochastic(rng, n)
    fm = fundamental_matrix(p)
    np.testing.assert_allclose(fm.f @ (np.eye(n) - p + np.outer(np.ones(n), fm.phi)), np.eye(n), atol=1e-9)
    assert fm.phi.min() > 0 and fm.phi.sum() == pytest.approx(1.0)


def test_resistance_distance_uniform():
    np.testing.assert_allclose(resistance_distance(UNIFORM2), [[0, 2], [2, 0]], atol=1e-15)


@settings(max_examples=30)
@given(seeds)
def test_resistance_distance_doubly_stochastic(seed):
    rng = np.random.default_rng(seed)
    p = gen.random_doubly_stochastic(rng, int(rng.integers(2, 9)))
    omega = resistance_distance(p)
    np.testing.assert_allclose(omega, omega.T, atol=1e-12)
    np.testing.assert_allclose(omega, resistance_matrix(WeightedDigraph(p)), atol=1e-8)


def test_resistance_distance_differs_in_general():
    p = gen.random_stochastic(np.random.default_rng(0), 4)
    assert np.abs(resistance_distance(p) - resistance_matrix(WeightedDigraph(p))).max() > 1e-3


def test_hitting_metric_uniform():
    d = hitting_prob_metric(WeightedDigraph(np.ones((2, 2))))
    assert d[0, 1] == pytest.approx(np.log(4))
    assert d[0, 0] == 0.0


def test_hitting_metric_preconditions():
    with pytest.raises(PreconditionError):
        hitting_prob_metric(CYCLE3, beta=0.4)
    with pytest.raises(PreconditionError):
        hitting_prob_metric(WeightedDigraph([[0, 1], [0, 0]]))


@settings(max_examples=30)
@given(seeds)
def test_hitting_metric_log_identity(seed):
    rng = np.random.default_rng(seed)
    g = gen.random_strongly_connected(rng, int(rng.integers(2, 9)), self_loops=True)
    n = g.n
    off = ~np.eye(n, dtype=bool)
    r = resistance_matrix(g)
    m = balancing(g)
    expected = np.log(np.where(off, r, 1.0)) - np.log(m)[:, None]
    np.testing.assert_allclose(hitting_prob_metric(g)[off], expected[off], atol=1e-8)


@settings(max_examples=30)
@given(seeds, st.floats(0.51, 1.0))
def test_hitting_metric_axioms(seed, beta):
    rng = np.random.default_rng(seed)
    g = gen.random_strongly_connected(rng, int(rng.integers(2, 8)))
    d = hitting_prob_metric(g, beta)
    off = ~np.eye(g.n, dtype=bool)
    assert d[off].min() > 0
    np.testing.assert_allclose(d, d.T, atol=1e-9)
    slack = d[:, :, None] + d[None, :, :] - d[:, None, :]
    assert slack.min() >= -1e-9
