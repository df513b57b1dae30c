# core/preferences.py

"""Instances, allocations and (dis)satisfaction.

Agent ``i`` is dominated-satisfied by item ``u`` when some item allocated to
``i`` reaches ``u``. Dissatisfaction counts the items no allocated item
reaches; an agent receiving nothing has dissatisfaction ``n``.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional

from .dag import PreferenceGraph, iter_bits, mask_of
from .exceptions import (
    AgentCountError,
    InvalidAllocationError,
    InvalidInstanceError,
    MissingThresholdError,
    SolverInvariantError,
)


@dataclass(frozen=True)
class Instance:
    """A preference graph shared by ``k`` agents, with an optional threshold."""

    graph: PreferenceGraph
    k: int
    threshold: Optional[int] = None

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInstanceError(f"Agent count must be at least 1, got {self.k}")
        if self.threshold is not None and not 0 <= self.threshold <= self.graph.n:
            raise InvalidInstanceError(
                f"Threshold {self.threshold} outside [0, {self.graph.n}]"
            )

    @property
    def n(self) -> int:
        return self.graph.n

    def with_threshold(self, threshold: Optional[int]) -> "Instance":
        return Instance(self.graph, self.k, threshold)


@dataclass(frozen=True)
class Allocation:
    """Item bundles indexed by agent."""

    assigned: tuple[frozenset[int], ...]

    @classmethod
    def from_bundles(cls, bundles: Iterable[Iterable[int]]) -> "Allocation":
        return cls(tuple(frozenset(bundle) for bundle in bundles))

    @classmethod
    def from_mapping(cls, k: int, mapping: Mapping[int, Iterable[int]]) -> "Allocation":
        for agent in mapping:
            if not 0 <= agent < k:
                raise InvalidAllocationError(f"Agent {agent} outside [0, {k})")
        return cls(tuple(frozenset(mapping.get(agent, ())) for agent in range(k)))

    @classmethod
    def empty(cls, k: int) -> "Allocation":
        return cls(tuple(frozenset() for _ in range(k)))

    @property
    def k(self) -> int:
        return len(self.assigned)

    def items_of(self, agent: int) -> frozenset[int]:
        return self.assigned[agent]

    def allocated(self) -> frozenset[int]:
        return frozenset().union(*self.assigned)

    def as_lists(self) -> list[list[int]]:
        return [sorted(bundle) for bundle in self.assigned]


@dataclass(frozen=True)
class DissatisfactionProfile:
    values: tuple[int, ...]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, agent: int) -> int:
        return self.values[agent]


class SolverName(str, Enum):
    """Identifiers reported in results and dispatch reports."""

    CANONICAL = "canonical"
    SINGLE_AGENT = "single_agent"
    TWO_AGENTS = "two_agents"
    OUT_STARS = "out_stars"
    WIDTH_TWO = "width_two"
    OUT_FOREST = "out_forest"
    IS_MODULES = "is_modules"
    MODULAR_FPT = "modular_fpt"
    ORACLE = "oracle"


@dataclass(frozen=True)
class SolveResult:
    optimum: int
    allocation: Allocation
    profile: DissatisfactionProfile
    solver: SolverName
    lower_bound_note: Optional[str] = None


def validate_allocation(inst: Instance, alloc: Allocation):
    """Raise InvalidAllocationError unless ``alloc`` fits ``inst``."""
    if alloc.k != inst.k:
        raise InvalidAllocationError(
            f"Allocation lists {alloc.k} agents, instance has {inst.k}"
        )
    owner: dict[int, int] = {}
    for agent, bundle in enumerate(alloc.assigned):
        for item in bundle:
            if not 0 <= item < inst.n:
                raise InvalidAllocationError(f"Item {item} outside [0, {inst.n})")
            if item in owner:
                raise InvalidAllocationError(
                    f"Item {item} allocated to both agent {owner[item]} and agent {agent}"
                )
            owner[item] = agent


def dissatisfaction_profile(inst: Instance, alloc: Allocation) -> DissatisfactionProfile:
    validate_allocation(inst, alloc)
    g = inst.graph
    return DissatisfactionProfile(
        tuple(g.n - g.dominated_by(bundle).bit_count() for bundle in alloc.assigned)
    )


def satisfaction_profile(inst: Instance, alloc: Allocation) -> tuple[int, ...]:
    return tuple(inst.n - value for value in dissatisfaction_profile(inst, alloc))


def max_dissatisfaction(profile: DissatisfactionProfile) -> int:
    return max(profile.values, default=0)


def normalize_to_antichains(inst: Instance, alloc: Allocation) -> Allocation:
    """Drop every item dominated by another item of the same bundle."""
    before = dissatisfaction_profile(inst, alloc)
    g = inst.graph
    bundles = []
    for bundle in alloc.assigned:
        mask = mask_of(bundle)
        bundles.append(frozenset(v for v in iter_bits(mask) if g.pred[v] & mask == 1 << v))
    normalized = Allocation(tuple(bundles))
    if dissatisfaction_profile(inst, normalized) != before:
        raise SolverInvariantError("Antichain normalization changed the profile")
    return normalized


def verify_decision(inst: Instance, alloc: Allocation) -> tuple[bool, DissatisfactionProfile]:
    """Check ``alloc`` against the instance threshold.

    Returns:
        Whether every agent is within the threshold, and the profile as evidence
    """
    if inst.threshold is None:
        raise MissingThresholdError("Decision check needs a threshold")
    profile = dissatisfaction_profile(inst, alloc)
    return max_dissatisfaction(profile) <= inst.threshold, profile


def canonical_allocation(inst: Instance) -> Allocation:
    """One item per agent in topological order when agents outnumber items."""
    if inst.k <= inst.n:
        raise AgentCountError(
            f"Canonical allocation needs more agents than items (k={inst.k}, n={inst.n})"
        )
    bundles = [frozenset({v}) for v in inst.graph.topo]
    bundles += [frozenset()] * (inst.k - inst.n)
    return Allocation(tuple(bundles))


def make_result(
    inst: Instance,
    alloc: Allocation,
    solver: SolverName,
    expected_optimum: Optional[int] = None,
    note: Optional[str] = None,
) -> SolveResult:
    """Wrap ``alloc`` in a SolveResult after recomputing its profile.

    Raises:
        SolverInvariantError: If ``expected_optimum`` disagrees with the profile
    """
    try:
        profile = dissatisfaction_profile(inst, alloc)
    except InvalidAllocationError as e:
        raise SolverInvariantError(
            f"Solver {solver.value} produced an invalid allocation: {e}"
        ) from e
    optimum = max_dissatisfaction(profile)
    if expected_optimum is not None and expected_optimum != optimum:
        raise SolverInvariantError(
            f"Solver {solver.value} claimed optimum {expected_optimum}, "
            f"allocation achieves {optimum}"
        )
    return SolveResult(
        optimum=optimum,
        allocation=alloc,
        profile=profile,
        solver=solver,
        lower_bound_note=note,
    )
