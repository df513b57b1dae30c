# solvers/dispatch.py

"""Route an instance to the strongest solver whose preconditions hold."""

from dataclasses import dataclass, field
from typing import Callable, Optional

from core.config import config
from core.dag import ShapeTag, classify_shape, sources, width_and_chain_partition
from core.exceptions import (
    BudgetExceededError,
    SolverInvariantError,
    StateSpaceExceededError,
    UnsolvableWithinBudgetError,
)
from core.logging import get_logger
from core.preferences import (
    Allocation,
    Instance,
    SolveResult,
    SolverName,
    canonical_allocation,
    dissatisfaction_profile,
    make_result,
    max_dissatisfaction,
)

from .is_modules import solve_is_modules
from .modular_fpt import solve_modular_fpt
from .modules import modular_partition
from .oracle import brute_force_optimum
from .out_forest import solve_out_forest
from .out_stars import solve_out_stars
from .two_agents import solve_two_agents
from .width_two import solve_width_two

logger = get_logger(__name__)


@dataclass
class DispatchReport:
    """What the dispatcher saw, what it ran and what it gave up on."""

    tags: frozenset[ShapeTag] = frozenset()
    width: Optional[int] = None
    chosen: Optional[SolverName] = None
    fallbacks: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class Budgets:
    oracle_budget: int = field(default_factory=lambda: config.oracle_budget)
    guess_budget: int = field(default_factory=lambda: config.guess_budget)
    dp_k_cap: int = field(default_factory=lambda: config.dp_k_cap)
    dp_state_cap: int = field(default_factory=lambda: config.dp_state_cap)


def solve_single_agent(inst: Instance) -> SolveResult:
    """One agent takes every source and dominates everything."""
    allocation = Allocation((sources(inst.graph),))
    return make_result(inst, allocation, SolverName.SINGLE_AGENT, expected_optimum=0)


def _reverify(inst: Instance, result: SolveResult) -> SolveResult:
    profile = dissatisfaction_profile(inst, result.allocation)
    if profile != result.profile or max_dissatisfaction(profile) != result.optimum:
        raise SolverInvariantError(
            f"Solver {result.solver.value} reported {result.optimum}, "
            f"allocation achieves {max_dissatisfaction(profile)}"
        )
    return result


def dispatch_solve(
    inst: Instance, budgets: Optional[Budgets] = None
) -> tuple[SolveResult, DispatchReport]:
    """Solve ``inst`` with the first applicable solver in priority order.

    Budget and state-space failures fall through to the next candidate and
    are recorded in the report.

    Raises:
        UnsolvableWithinBudgetError: If every applicable solver gave up
    """
    budgets = budgets or Budgets()
    g = inst.graph
    report = DispatchReport()

    if inst.k > inst.n:
        report.chosen = SolverName.CANONICAL
        report.notes.append("more agents than items: some agent receives nothing")
        result = make_result(inst, canonical_allocation(inst), SolverName.CANONICAL, inst.n)
        logger.info("dispatch.routed", solver=report.chosen.value, k=inst.k, n=inst.n)
        return _reverify(inst, result), report

    cert = width_and_chain_partition(g)
    report.width = cert.width
    report.tags = classify_shape(g, cert)

    candidates: list[tuple[SolverName, bool, Callable[[], SolveResult], str]] = [
        (SolverName.SINGLE_AGENT, inst.k == 1, lambda: solve_single_agent(inst), "k != 1"),
        (SolverName.TWO_AGENTS, inst.k == 2, lambda: solve_two_agents(inst), "k != 2"),
        (
            SolverName.OUT_STARS,
            ShapeTag.OUT_STAR_COLLECTION in report.tags and inst.k >= 3,
            lambda: solve_out_stars(inst),
            "not a collection of out-stars",
        ),
        (
            SolverName.WIDTH_TWO,
            cert.width <= 2,
            lambda: solve_width_two(inst, cert),
            f"width {cert.width} > 2",
        ),
        (
            SolverName.OUT_FOREST,
            ShapeTag.OUT_FOREST in report.tags and inst.k <= budgets.dp_k_cap,
            lambda: solve_out_forest(
                inst, k_cap=budgets.dp_k_cap, state_cap=budgets.dp_state_cap
            ),
            f"not an out-forest with k <= {budgets.dp_k_cap}",
        ),
    ]
    for name, applicable, run, reason in candidates:
        if not applicable:
            report.notes.append(f"{name.value} skipped: {reason}")
            continue
        try:
            result = run()
        except StateSpaceExceededError as e:
            report.fallbacks.append(f"{name.value}: {e}")
            logger.info("dispatch.fallback", solver=name.value, reason=str(e))
            continue
        report.chosen = name
        logger.info("dispatch.routed", solver=name.value, tags=sorted(t.value for t in report.tags))
        return _reverify(inst, result), report

    partition = modular_partition(g)
    report.notes.append(f"modular partition with d={partition.d}")
    modular_candidates: list[tuple[SolverName, bool, Callable[[], SolveResult]]] = [
        (
            SolverName.IS_MODULES,
            partition.all_independent(),
            lambda: solve_is_modules(inst, guess_budget=budgets.guess_budget),
        ),  # path modules of two or more vertices rule this out
        (
            SolverName.MODULAR_FPT,
            True,
            lambda: solve_modular_fpt(inst, partition, guess_budget=budgets.guess_budget),
        ),
        (
            SolverName.ORACLE,
            True,
            lambda: brute_force_optimum(inst, budget=budgets.oracle_budget),
        ),
    ]
    for name, applicable, run in modular_candidates:
        if not applicable:
            report.notes.append(f"{name.value} skipped: partition has a path module")
            continue
        try:
            result = run()
        except BudgetExceededError as e:
            report.fallbacks.append(f"{name.value}: {e}")
            logger.info("dispatch.fallback", solver=name.value, reason=str(e))
            continue
        report.chosen = name
        logger.info("dispatch.routed", solver=name.value, d=partition.d)
        return _reverify(inst, result), report

    logger.warning("dispatch.unsolvable", fallbacks=report.fallbacks)
    raise UnsolvableWithinBudgetError(
        "No applicable solver finished within its budget: " + "; ".join(report.fallbacks),
        report=report,
    )
