"""Escape probabilities from the resistance against simulated random walks.

Run with ``python3 demos/random_walks.py``.
"""

import numpy as np

from kronres import WalkConfig, escape_probability, first_passage_edge_probability, simulate_escape, simulate_first_edge
from kronres import generators as gen

rng = np.random.default_rng(1)
cfg = WalkConfig(trials=200_000, seed=7)

print(f"{'n':>3} {'pair':>7} {'exact':>8} {'simulated':>10} {'z':>6}")
for _ in range(8):
    g = gen.random_strongly_connected(rng, int(rng.integers(3, 9)), self_loops=True)
    a, b = (int(x) for x in rng.choice(g.n, 2, replace=False))
    p = escape_probability(g, a, b)
    est = simulate_escape(g, a, b, cfg)
    z = (est.p_hat - p) / est.std_err if est.std_err else 0.0
    print(f"{g.n:3d} {a + 1:>3},{b + 1:<3} {p:8.4f} {est.p_hat:10.4f} {z:6.2f}")

# Among walks that escape from a to b, how often was the last move the direct edge?
tri = gen.random_strongly_connected(rng, 5, density=0.7)
a, b = next((i, j) for i in range(5) for j in range(5) if i != j and tri.adj[i, j] > 0)
est = simulate_first_edge(tri, a, b, cfg)
print(f"\nfirst-edge probability {first_passage_edge_probability(tri, a, b):.4f}, simulated {est.p_hat:.4f} +- {est.std_err:.4f}")
