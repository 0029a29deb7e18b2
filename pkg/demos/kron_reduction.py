"""Kron reduction of the six-node example, directed and undirected.

Run with ``python3 demos/kron_reduction.py``.
"""

import numpy as np

from kronres import accompanying_matrices, graph_from_loopy, kron_reduce, self_loop_decomposition

np.set_printoptions(precision=4, suppress=True)

Q_DIRECTED = np.array(
    [
        [1, 0, 0, 0, -1, 0],
        [0, 1, 0, 0, 0, -1],
        [0, -1, 1, 0, 0, 0],
        [0, 0, -1, 2, 0, 0],
        [0, 0, -1, 0, 1, 0],
        [-1, 0, 0, 0, 0, 1],
    ],
    dtype=float,
)
Q_UNDIRECTED = np.array(
    [
        [2, 0, 0, 0, -1, -1],
        [0, 2, -1, 0, 0, -1],
        [0, -1, 3, -1, -1, 0],
        [0, 0, -1, 2, 0, 0],
        [-1, 0, -1, 0, 2, 0],
        [-1, -1, 0, 0, 0, 2],
    ],
    dtype=float,
)
boundary = [0, 1, 2]

for name, q in (("directed", Q_DIRECTED), ("undirected", Q_UNDIRECTED)):
    g = graph_from_loopy(q)
    res = kron_reduce(q, boundary)
    print(f"{name} graph, self-loops at nodes {[i + 1 for i in np.flatnonzero(g.self_loops)]}")
    print(res.q_red)
    print(f"  reduced self-loops: {res.g_red.self_loops}")
    print()

# In the directed graph the loop at node 4 drains mass that would otherwise
# have reached node 3, yet node 4 is not on any path between boundary nodes,
# so the reduced graph ends up loop-less.
acc = accompanying_matrices(Q_DIRECTED, boundary)
print("rac (interior rows 4, 5, 6):")
print(acc.rac)
print("row sums:", acc.rac.sum(axis=1))

# Q_red = L_red + boundary loops + S, where S collects what interior loops
# leave behind. It vanishes for the directed graph but not the undirected one.
for name, q in (("directed", Q_DIRECTED), ("undirected", Q_UNDIRECTED)):
    l_red, loops, s = self_loop_decomposition(q, boundary)
    print(f"\n{name} interior-loop contribution S:")
    print(s)
