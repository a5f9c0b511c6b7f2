"""Biharmonic distance queries on undirected graphs.

Exact dense oracle for small graphs plus four approximation algorithms
with additive-error guarantees: two deterministic truncated-traversal
estimators and two random-walk samplers (fixed budget, and feedback-
stopped), extended to nodal queries by exhaustive or subsampled
summation.
"""
from .graphs import (
    Graph,
    EdgeList,
    GraphParseError,
    UnknownNodeError,
    BipartiteGraphError,
    parse_edge_list,
    build_graph,
    largest_connected_component,
    is_bipartite,
    write_edge_list,
)
from .generators import (
    complete_graph,
    path_graph,
    cycle_graph,
    star_graph,
    erdos_renyi,
    connected_non_bipartite_er,
)
from .spectral import (
    SpectralInfo,
    ConvergenceError,
    estimate_lambda,
    estimate_gamma2,
    spectral_info,
)
from .exact import DenseOracle, OracleSizeError, build_oracle, exact_pair, exact_nodal
from .estimates import Estimate, QueryTimeout
from .push import (
    TruncationParams,
    ResidualVector,
    universal_length,
    pairwise_length,
    truncation_params,
    push_residual,
    beta_from_residual,
    query_push,
    query_push_plus,
)
from .walks import (
    EstimatorState,
    random_walk,
    xi,
    xi_prime,
    psi_bound,
    sample_z,
    sample_z_block,
    r_star,
    bernstein_radius,
    query_swf,
    query_stw,
)
from .nodal import (
    NodalEstimate,
    bernoulli_subset,
    query_snb,
    query_snb_plus,
)

__version__ = "0.1.0"

__all__ = [
    "Graph", "EdgeList", "GraphParseError", "UnknownNodeError",
    "BipartiteGraphError", "parse_edge_list", "build_graph",
    "largest_connected_component", "is_bipartite", "write_edge_list",
    "complete_graph", "path_graph", "cycle_graph", "star_graph",
    "erdos_renyi", "connected_non_bipartite_er",
    "SpectralInfo", "ConvergenceError", "estimate_lambda",
    "estimate_gamma2", "spectral_info",
    "DenseOracle", "OracleSizeError", "build_oracle", "exact_pair",
    "exact_nodal",
    "Estimate", "QueryTimeout",
    "TruncationParams", "ResidualVector", "universal_length",
    "pairwise_length", "truncation_params", "push_residual",
    "beta_from_residual", "query_push", "query_push_plus",
    "EstimatorState", "random_walk", "xi", "xi_prime", "psi_bound",
    "sample_z", "sample_z_block", "r_star", "bernstein_radius",
    "query_swf", "query_stw",
    "NodalEstimate", "bernoulli_subset", "query_snb", "query_snb_plus",
]
