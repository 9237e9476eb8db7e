"""critlab: exact critical-group computations for graphs.

Graphs, arbitrary-precision integer matrices, Smith normal forms, per-prime
elementary-divisor profiles, p-adic filtration checks, chip-firing oracles,
and the strongly-regular constraint analysis that pins down the admissible
critical groups of Moore-graph parameter sets.
"""

from .arith import factorize, is_prime, prime_power_divisors, valuation, xgcd
from .critical import (
    CriticalGroup,
    bicycle_dimension,
    critical_group,
    predicted_order_from_spectrum,
    spanning_tree_count,
)
from .exact import (
    ElemDivisorProfile,
    SnfResult,
    determinant,
    elem_divisor_profile,
    profile_from_factors,
    rank_mod_p,
    snf,
)
from .filtration import (
    FiltrationReport,
    filtration_M,
    filtration_N,
    verify_filtration_dims,
)
from .graphs import (
    ExistenceUnknownError,
    Graph,
    InfeasibleParametersError,
    QuadraticNumber,
    SrgParams,
    SrgSpectrum,
    adjacency_matrix,
    check_srg,
    complete_graph,
    cycle_graph,
    format_edge_list,
    hoffman_singleton_graph,
    laplacian_matrix,
    moore_graph,
    parse_edge_list,
    path_graph,
    petersen_graph,
    srg_spectrum,
)
from .intmatrix import IntMatrix, format_matrix, parse_matrix
from .lattices import Lattice, kernel_basis
from .moore import (
    AffineExpr,
    ContradictionError,
    DivisorBound,
    LaplacianIdentity,
    SolutionFamily,
    analyze,
    derive_laplacian_identity,
    divisor_bound,
    enumerate_families,
    family_membership,
    forced_multiplicities,
)
from .sandpile import (
    ChipConfig,
    SizeGuardError,
    is_recurrent,
    recurrent_count,
    sandpile_group_structure,
    stabilize,
)

__version__ = "0.1.0"

__all__ = [
    "AffineExpr",
    "ChipConfig",
    "ContradictionError",
    "CriticalGroup",
    "DivisorBound",
    "ElemDivisorProfile",
    "ExistenceUnknownError",
    "FiltrationReport",
    "Graph",
    "InfeasibleParametersError",
    "IntMatrix",
    "LaplacianIdentity",
    "Lattice",
    "QuadraticNumber",
    "SizeGuardError",
    "SnfResult",
    "SolutionFamily",
    "SrgParams",
    "SrgSpectrum",
    "adjacency_matrix",
    "analyze",
    "bicycle_dimension",
    "check_srg",
    "complete_graph",
    "critical_group",
    "cycle_graph",
    "derive_laplacian_identity",
    "determinant",
    "divisor_bound",
    "elem_divisor_profile",
    "enumerate_families",
    "factorize",
    "family_membership",
    "filtration_M",
    "filtration_N",
    "forced_multiplicities",
    "format_edge_list",
    "format_matrix",
    "hoffman_singleton_graph",
    "is_prime",
    "is_recurrent",
    "kernel_basis",
    "laplacian_matrix",
    "moore_graph",
    "parse_edge_list",
    "parse_matrix",
    "path_graph",
    "petersen_graph",
    "predicted_order_from_spectrum",
    "prime_power_divisors",
    "profile_from_factors",
    "rank_mod_p",
    "recurrent_count",
    "sandpile_group_structure",
    "snf",
    "spanning_tree_count",
    "srg_spectrum",
    "stabilize",
    "valuation",
    "verify_filtration_dims",
    "xgcd",
]
