"""How the random-walk resistance relates to three other constructions.

Run with ``python3 demos/rival_constructions.py``.
"""

import itertools

import numpy as np

from kronres import (
    WeightedDigraph,
    balancing,
    hitting_prob_metric,
    is_reachable_subset,
    kron_reduce,
    kron_reduce_lyapunov,
    loopless_laplacian,
    lyapunov_resistance_matrix,
    resistance_distance,
    resistance_matrix,
)
from kronres import generators as gen

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(2)

# Resistance distance of a chain matches only when the chain is doubly stochastic.
p = gen.random_doubly_stochastic(rng, 5)
print("doubly stochastic: max |Ω - R| =", np.abs(resistance_distance(p) - resistance_matrix(WeightedDigraph(p))).max())
p = gen.random_stochastic(rng, 5)
print("general chain:     max |Ω - R| =", np.abs(resistance_distance(p) - resistance_matrix(WeightedDigraph(p))).max())

# The hitting-probability metric is log R shifted per row.
g = gen.random_strongly_connected(rng, 5)
off = ~np.eye(5, dtype=bool)
shifted = np.log(np.where(off, resistance_matrix(g), 1.0)) - np.log(balancing(g))[:, None]
print("\nhitting metric minus log-resistance:", np.abs(hitting_prob_metric(g) - shifted)[off].max())

# Lyapunov resistance survives its own Kron reduction, but the reduced
# Laplacian may carry negative edge weights. Ours stays a Z-matrix.
for seed in itertools.count():
    adj = np.random.default_rng(seed).integers(0, 4, size=(4, 4)).astype(float)
    np.fill_diagonal(adj, 0.0)
    g = WeightedDigraph(adj)
    if not is_reachable_subset(g, (1, 2, 3)):
        continue
    try:
        l_kr = kron_reduce_lyapunov(g, (1, 2, 3))
    except ValueError:
        continue
    if l_kr[~np.eye(3, dtype=bool)].max() > 1e-6:
        break
print(f"\nseed {seed}, adjacency:\n{adj}")
print("symmetrized reduction (positive off-diagonals are negative edges):")
print(l_kr)
r = lyapunov_resistance_matrix(g)
print("Lyapunov resistance preserved:", np.abs(lyapunov_resistance_matrix(l_kr) - r[1:, 1:]).max())
print("our reduction of the same graph:")
print(kron_reduce(loopless_laplacian(g), (1, 2, 3)).q_red)
