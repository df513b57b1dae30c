# solvers/oracle.py

"""Exact branch-and-bound over antichain allocations.

Items are branched in topological order: each item goes to one agent that
does not already dominate it, or to nobody. An agent never receives an item
dominated by its bundle, so every bundle stays an antichain.
"""

from typing import Optional

from core.config import config
from core.dag import top_levels
from core.exceptions import BudgetExceededError, MissingThresholdError
from core.logging import get_logger
from core.preferences import (
    Allocation,
    Instance,
    SolveResult,
    SolverName,
    canonical_allocation,
    make_result,
)

logger = get_logger(__name__)


def sources_lower_bound(inst: Instance) -> int:
    """Every source is missed by at least k-1 agents; spread over k agents."""
    source_count = sum(1 for v in range(inst.n) if not inst.graph.in_adj[v])
    return -(-(inst.k - 1) * source_count // inst.k)


class ExhaustiveSearch:
    """Depth-first search with bound and agent-symmetry pruning.

    Args:
        inst: Instance to search
        budget: Maximum branch nodes before BudgetExceededError
        level_kernel: Only branch on vertices of level at most k
    """

    def __init__(self, inst: Instance, budget: int, level_kernel: bool):
        self.inst = inst
        self.budget = budget
        g = inst.graph
        kernel = top_levels(g, inst.k) if level_kernel else g.full_mask
        self.items = [v for v in g.topo if (kernel >> v) & 1]

        # suffix[i]: everything the items from position i on can still dominate
        self.suffix = [0] * (len(self.items) + 1)
        for i in range(len(self.items) - 1, -1, -1):
            self.suffix[i] = self.suffix[i + 1] | g.reach[self.items[i]]

        self.nodes = 0
        self.cover = [0] * inst.k
        self.bundles: list[list[int]] = [[] for _ in range(inst.k)]
        self.best = inst.n + 1
        self.best_bundles: Optional[list[list[int]]] = None
        self.stop_at = -1
        self.logger = get_logger(f"{__name__}.ExhaustiveSearch")

    def run(self, incumbent: int, stop_at: int) -> Optional[Allocation]:
        """Search for an allocation with max dissatisfaction below ``incumbent``.

        The search returns as soon as it finds one at or below ``stop_at``.
        Returns the best allocation found, or None if nothing beats the
        incumbent.
        """
        self.best = incumbent
        self.stop_at = stop_at
        self.best_bundles = None
        self._branch(0, 0)
        self.logger.debug(
            "oracle.searched",
            n=self.inst.n,
            k=self.inst.k,
            branched_items=len(self.items),
            nodes=self.nodes,
            best=self.best,
        )
        if self.best_bundles is None:
            return None
        return Allocation.from_bundles(self.best_bundles)

    def _bound(self, depth: int) -> int:
        n = self.inst.n
        reachable = self.suffix[depth]
        return max(n - (cover | reachable).bit_count() for cover in self.cover)

    def _branch(self, depth: int, opened: int):
        self.nodes += 1
        if self.nodes > self.budget:
            self.logger.warning("oracle.budget_exceeded", nodes=self.nodes, budget=self.budget)
            raise BudgetExceededError(
                f"Exhaustive search exceeded its budget of {self.budget} nodes"
            )

        bound = self._bound(depth)
        if bound >= self.best:
            return
        if depth == len(self.items):
            self.best = bound
            self.best_bundles = [list(bundle) for bundle in self.bundles]
            return

        v = self.items[depth]
        reach_v = self.inst.graph.reach[v]
        # Agents at index >= opened are empty and interchangeable: open only one.
        candidates = sorted(
            range(min(opened + 1, self.inst.k)),
            key=lambda a: (self.cover[a].bit_count(), a),
        )
        for a in candidates:
            if (self.cover[a] >> v) & 1:
                continue
            saved = self.cover[a]
            self.cover[a] = saved | reach_v
            self.bundles[a].append(v)
            self._branch(depth + 1, max(opened, a + 1))
            self.bundles[a].pop()
            self.cover[a] = saved
            if self.best <= self.stop_at:
                return

        self._branch(depth + 1, opened)


def brute_force_optimum(
    inst: Instance,
    budget: Optional[int] = None,
    level_kernel: Optional[bool] = None,
) -> SolveResult:
    """Exact min-max dissatisfaction.

    Raises:
        BudgetExceededError: If the search visits more than ``budget`` nodes
    """
    if inst.k > inst.n:
        return make_result(inst, canonical_allocation(inst), SolverName.ORACLE, inst.n)

    search = ExhaustiveSearch(
        inst,
        budget=config.oracle_budget if budget is None else budget,
        level_kernel=config.oracle_level_kernel if level_kernel is None else level_kernel,
    )
    # Empty allocation scores n; any k <= n instance does better.
    allocation = search.run(incumbent=inst.n, stop_at=sources_lower_bound(inst))
    if allocation is None:
        allocation = Allocation.empty(inst.k)
    result = make_result(inst, allocation, SolverName.ORACLE)
    logger.info("oracle.solved", optimum=result.optimum, nodes=search.nodes)
    return result


def brute_force_decision(
    inst: Instance,
    budget: Optional[int] = None,
    level_kernel: Optional[bool] = None,
) -> tuple[bool, Optional[Allocation]]:
    """Whether some allocation keeps every agent within the instance threshold.

    Returns:
        The answer and, when positive, a witnessing allocation
    """
    if inst.threshold is None:
        raise MissingThresholdError("Decision search needs a threshold")
    if inst.k > inst.n:
        if inst.n > inst.threshold:
            return False, None
        return True, canonical_allocation(inst)

    search = ExhaustiveSearch(
        inst,
        budget=config.oracle_budget if budget is None else budget,
        level_kernel=config.oracle_level_kernel if level_kernel is None else level_kernel,
    )
    allocation = search.run(incumbent=inst.threshold + 1, stop_at=inst.threshold)
    logger.info("oracle.decided", threshold=inst.threshold, feasible=allocation is not None)
    return allocation is not None, allocation
