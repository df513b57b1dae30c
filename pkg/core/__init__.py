"""Core model: preference graphs, allocations, matching and flow."""

from .dag import (
    PreferenceGraph,
    ShapeTag,
    WidthCertificate,
    build_dag,
    classify_shape,
    depth,
    is_antichain,
    levels,
    predecessors,
    sources,
    top_levels,
    width_and_chain_partition,
)
from .exceptions import (
    AgentCountError,
    BudgetExceededError,
    CycleDetectedError,
    DuplicateArcError,
    FairdagException,
    GraphException,
    ImproperColoringError,
    InfeasibleMatchingError,
    InstanceException,
    InstanceFormatError,
    InvalidAllocationError,
    InvalidInstanceError,
    InvalidVertexError,
    MissingThresholdError,
    NotAForestError,
    NotAllIsModulesError,
    NotAPartitionError,
    NotOutStarsError,
    SolverException,
    SolverInvariantError,
    StateSpaceExceededError,
    UnsolvableWithinBudgetError,
    WidthTooLargeError,
)
from .matching import (
    BipartiteGraph,
    FlowNetwork,
    WeightedBipartiteGraph,
    bottleneck_k_matching,
    max_bipartite_matching,
    max_flow,
)
from .preferences import (
    Allocation,
    DissatisfactionProfile,
    Instance,
    SolveResult,
    SolverName,
    canonical_allocation,
    dissatisfaction_profile,
    make_result,
    max_dissatisfaction,
    normalize_to_antichains,
    satisfaction_profile,
    verify_decision,
)

__all__ = [
    # Graphs
    "PreferenceGraph",
    "ShapeTag",
    "WidthCertificate",
    "build_dag",
    "classify_shape",
    "depth",
    "is_antichain",
    "levels",
    "predecessors",
    "sources",
    "top_levels",
    "width_and_chain_partition",
    # Matching and flow
    "BipartiteGraph",
    "FlowNetwork",
    "WeightedBipartiteGraph",
    "bottleneck_k_matching",
    "max_bipartite_matching",
    "max_flow",
    # Allocations
    "Allocation",
    "DissatisfactionProfile",
    "Instance",
    "SolveResult",
    "SolverName",
    "canonical_allocation",
    "dissatisfaction_profile",
    "make_result",
    "max_dissatisfaction",
    "normalize_to_antichains",
    "satisfaction_profile",
    "verify_decision",
    # Exceptions
    "FairdagException",
    "GraphException",
    "CycleDetectedError",
    "InvalidVertexError",
    "DuplicateArcError",
    "NotAForestError",
    "NotOutStarsError",
    "WidthTooLargeError",
    "NotAPartitionError",
    "NotAllIsModulesError",
    "InstanceException",
    "InvalidInstanceError",
    "InvalidAllocationError",
    "MissingThresholdError",
    "InstanceFormatError",
    "ImproperColoringError",
    "AgentCountError",
    "SolverException",
    "BudgetExceededError",
    "StateSpaceExceededError",
    "InfeasibleMatchingError",
    "SolverInvariantError",
    "UnsolvableWithinBudgetError",
]
