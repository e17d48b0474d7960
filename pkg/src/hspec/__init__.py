"""H-eigenvalues of symmetric tensors and uniform hypergraphs.

Sparse orbit-based symmetric tensors, k-uniform hypergraph models, two
extreme H-eigenvalue solvers with residual certificates, a brute-force
enumeration oracle for small instances, and the full family of
principal-subtensor / vertex-removal / edge-removal perturbation bounds
with equality-case diagnostics.
"""

from .bounds import (
    BoundReport,
    cmax_bounds,
    edge_removal_rho_bounds,
    equality_witness_rho,
    gamma_bounds,
    least_vector_entry_bound,
    linear_vertex_removal_bound,
    lmin_edge_removal_bounds,
    lmin_subtensor_bounds,
    lmin_vertex_removal_bounds,
    perron_entry_bounds,
    subtensor_lmax_bounds,
    subtensor_rho_ratio_bound,
    vertex_removal_bounds,
    vertex_set_removal_bounds,
)
from .eigensolve import (
    EigenPair,
    SolverConfig,
    even_stationary_pairs,
    extreme_h_eigen_even,
    hyper_lambda_min,
    hyper_rho,
    spectral_radius_nonneg,
)
from .hypergraph import (
    Hypergraph,
    adjacency_tensor,
    build_hypergraph,
    edge_weighted_sums,
    remove_edges,
    remove_vertices,
)
from .io import (
    format_hypergraph,
    format_tensor,
    load_instance,
    parse_hypergraph,
    parse_tensor,
)
from .oracle import OracleResult, certify_extremal, enumerate_h_eigenpairs, verify_closed_forms
from .tensor import (
    SymmetricTensor,
    build_tensor,
    complement,
    embed_restriction,
    inclusion_exclusion_lhs,
    inclusion_exclusion_rhs,
    outside_prefix_sum,
    principal_subtensor,
    removal_correction,
    support_components,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
