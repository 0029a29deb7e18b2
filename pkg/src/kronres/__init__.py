"""Kron reduction and Markov-chain effective resistance for directed graphs."""

from .comparisons import (
    FundamentalMatrix,
    LyapunovResistanceBundle,
    chain_period,
    fundamental_matrix,
    hitting_prob_metric,
    hk_decomposition,
    kron_reduce_lyapunov,
    lyapunov_bundle,
    lyapunov_resistance,
    lyapunov_resistance_matrix,
    projection_basis,
    resistance_distance,
)
from .exceptions import (
    GraphFormatError,
    KronresError,
    NotBalancedError,
    NotReachableError,
    NotStronglyConnectedError,
    PreconditionError,
    SimulationError,
    SingularMatrixError,
)
from .graph import (
    WeightedDigraph,
    build_graph,
    degrees,
    graph_from_loopy,
    is_reachable_subset,
    is_strongly_connected,
    is_weight_balanced,
    loopless_laplacian,
    loopy_laplacian,
    transition_matrix,
)
from .kron import (
    AccompanyingMatrices,
    KronResult,
    accompanying_matrices,
    grounded_augmentation,
    has_reduced_edge,
    kron_reduce,
    kron_reduce_iterative,
    reduce_injections,
    self_loop_decomposition,
)
from .montecarlo import EscapeEstimate, WalkConfig, simulate_escape, simulate_first_edge, simulate_voltage
from .resistance import (
    ExtendedResistance,
    balancing,
    edm_check,
    edm_gram,
    effective_conductance,
    effective_resistance,
    escape_probability,
    first_passage_edge_probability,
    metric_matrix,
    resistance_balanced_pinv,
    resistance_general,
    resistance_matrix,
    resistance_strongly_connected,
    stationary_distribution,
    total_resistance,
    total_resistance_trace,
    voltage_vector,
)

__version__ = "0.1.0"
