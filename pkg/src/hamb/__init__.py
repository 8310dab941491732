"""Exact counting, unbiased randomized estimation, and upper bounds for
Hamiltonian cycles in directed, symmetric-directed, and undirected graphs."""

from .bounds import (
    BoundReport,
    BoundValue,
    DominanceRecord,
    bregman_bound,
    digraph_bounds,
    dominance_compare,
    minc_bound,
    symmetric_bound,
    symmetric_product_value,
    undirected_bounds,
)
from .errors import GraphSizeError, HambError, ParseError, PolicyError
from .estimator import (
    EstimateReport,
    RowOrderPolicy,
    TrialOutcome,
    enumerate_branches,
    estimate,
    trial_ascending,
    trial_stream,
    trial_with_policy,
)
from .exact import (
    estimator_expectation,
    ham_bruteforce,
    ham_dp,
    ham_undirected,
    permanent_ryser,
)
from .graphs import (
    ContractedMatrix,
    CycleWitness,
    DiGraph,
    UndiGraph,
    build_digraph,
    build_undigraph,
    contract,
    degrees,
    gen_family,
    gen_gnp,
    is_symmetric,
    max_vertices,
    row_sums,
    to_symmetric_digraph,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BoundValue",
    "ContractedMatrix",
    "CycleWitness",
    "DiGraph",
    "DominanceRecord",
    "EstimateReport",
    "GraphSizeError",
    "HambError",
    "ParseError",
    "PolicyError",
    "RowOrderPolicy",
    "TrialOutcome",
    "UndiGraph",
    "bregman_bound",
    "build_digraph",
    "build_undigraph",
    "contract",
    "degrees",
    "digraph_bounds",
    "dominance_compare",
    "enumerate_branches",
    "estimate",
    "estimator_expectation",
    "gen_family",
    "gen_gnp",
    "ham_bruteforce",
    "ham_dp",
    "ham_undirected",
    "is_symmetric",
    "max_vertices",
    "minc_bound",
    "permanent_ryser",
    "row_sums",
    "symmetric_bound",
    "symmetric_product_value",
    "to_symmetric_digraph",
    "trial_ascending",
    "trial_stream",
    "trial_with_policy",
    "undirected_bounds",
]
