"""Three routes to the effective resistance of a directed graph, and the
Euclidean metric it induces.

Run with ``python3 demos/resistance_routes.py``.
"""

import numpy as np

from kronres import edm_check, edm_gram, metric_matrix, resistance_matrix
from kronres import generators as gen

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(0)

g = gen.random_balanced(rng, 6)
r = {m: resistance_matrix(g, m) for m in ("schur", "pinv", "balanced")}
print("weight-balanced graph, schur route:")
print(r["schur"])
print("pinv vs schur:", np.abs(r["pinv"] - r["schur"]).max())
print("balanced vs schur:", np.abs(r["balanced"] - r["schur"]).max())

# A general strongly connected graph has an asymmetric R, but d = sqrt(R / m_i)
# is symmetric and embeds in Euclidean space.
g = gen.random_strongly_connected(rng, 6)
r = resistance_matrix(g)
d = metric_matrix(g)
print("\nasymmetry of R:", np.abs(r - r.T).max())
print("asymmetry of d:", np.abs(d - d.T).max())
print("Gram eigenvalues:", np.linalg.eigvalsh(edm_gram(d**2)))

# Shortest-path distances on a 4-cycle-like graph do not embed.
sp = np.array([[0, 1, np.sqrt(2), 1], [1, 0, 1, 2], [np.sqrt(2), 1, 0, 1], [1, 2, 1, 0]])
print("\nshortest-path matrix is an EDM:", edm_check(sp**2))
print("Gram eigenvalues:", np.linalg.eigvalsh(edm_gram(sp**2)))
