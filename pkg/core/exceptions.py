# core/exceptions.py

"""Exception hierarchy for the fairdag solver library."""

from typing import Any, Optional


class FairdagException(Exception):
    """Base exception for all fairdag errors."""

    #: Machine-readable code reported by the command line.
    code = "fairdag_error"


# Graph Exceptions
class GraphException(FairdagException):
    """Base exception for malformed or unsuitable preference graphs."""

    code = "graph_error"


class CycleDetectedError(GraphException):
    """Raised when the arc relation contains a directed cycle."""

    code = "cycle_detected"

    def __init__(self, message: str, cycle: Optional[list[int]] = None):
        super().__init__(message)
        self.cycle = cycle or []


class InvalidVertexError(GraphException):
    """Raised when an arc or item refers to a vertex outside [0, n)."""

    code = "invalid_vertex"


class DuplicateArcError(GraphException):
    """Raised when the same arc is listed twice."""

    code = "duplicate_arc"


class NotAForestError(GraphException):
    """Raised when an out-forest is required but some vertex has in-degree > 1."""

    code = "not_a_forest"


class NotOutStarsError(GraphException):
    """Raised when a collection of out-stars is required."""

    code = "not_out_stars"


class WidthTooLargeError(GraphException):
    """Raised when a width-bounded solver receives a wider graph."""

    code = "width_too_large"


class NotAPartitionError(GraphException):
    """Raised when a module family does not partition the vertex set."""

    code = "not_a_partition"


class NotAllIsModulesError(GraphException):
    """Raised when a family member is not an independent-set module."""

    code = "not_all_is_modules"


# Instance Exceptions
class InstanceException(FairdagException):
    """Base exception for invalid instances, allocations and input files."""

    code = "instance_error"


class InvalidInstanceError(InstanceException):
    """Raised when agent count or threshold are out of range."""

    code = "invalid_instance"


class InvalidAllocationError(InstanceException):
    """Raised when an allocation overlaps or refers to unknown items or agents."""

    code = "invalid_allocation"


class MissingThresholdError(InstanceException):
    """Raised when a decision query has no threshold."""

    code = "missing_threshold"


class InstanceFormatError(InstanceException):
    """Raised when an instance, allocation or edge-list file cannot be parsed."""

    code = "format_error"


class ImproperColoringError(InstanceException):
    """Raised when a coloring is not a proper k-coloring."""

    code = "improper_coloring"


class AgentCountError(InstanceException):
    """Raised when a solver or construction receives an unsupported agent count."""

    code = "agent_count"


# Solver Exceptions
class SolverException(FairdagException):
    """Base exception for solver failures."""

    code = "solver_error"


class BudgetExceededError(SolverException):
    """Raised when a search or enumeration exceeds its configured budget."""

    code = "budget_exceeded"


class StateSpaceExceededError(SolverException):
    """Raised when a dynamic program exceeds its state cap."""

    code = "state_space_exceeded"


class InfeasibleMatchingError(SolverException):
    """Raised when no matching of the requested cardinality exists."""

    code = "infeasible_matching"


class SolverInvariantError(SolverException):
    """Raised when a solver result fails its own re-verification."""

    code = "solver_invariant"


class UnsolvableWithinBudgetError(SolverException):
    """Raised when no applicable solver finishes within the configured budgets."""

    code = "unsolvable_within_budget"

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report
