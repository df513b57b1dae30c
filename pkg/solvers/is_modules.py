# solvers/is_modules.py

"""Exact solver for graphs partitioned into independent-set modules.

Agents are grouped by the set S of modules their bundle draws from. The
union of S must be an antichain; an S-agent holding t vertices then misses
d_S + |union S| - t items, where d_S counts the vertices the union does not
reach. A guess fixes the used sets and how many agents use each; a small
flow decides whether the module vertices stretch far enough.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from core.config import config
from core.dag import Bitset, PreferenceGraph, is_antichain, iter_bits, mask_of
from core.exceptions import (
    AgentCountError,
    BudgetExceededError,
    NotAllIsModulesError,
    NotAPartitionError,
)
from core.logging import get_logger
from core.matching import FlowNetwork, max_flow
from core.preferences import Allocation, Instance, SolveResult, SolverName, make_result

from .modules import is_module, twin_classes

logger = get_logger(__name__)


@dataclass(frozen=True)
class AssignableSet:
    """Indices into the module family, the union mask and d_S."""

    members: tuple[int, ...]
    union: Bitset
    undominated: int

    @property
    def union_size(self) -> int:
        return self.union.bit_count()


@dataclass(frozen=True)
class AssignableFamily:
    modules: tuple[frozenset[int], ...]
    sets: tuple[AssignableSet, ...]


def assignable_sets(
    g: PreferenceGraph,
    is_modules: Sequence[Iterable[int]],
    budget: Optional[int] = None,
) -> AssignableFamily:
    """All module subsets whose union is a nonempty antichain.

    The union of independent-set modules is an antichain iff every pair of
    them is mutually unreachable, so the subsets are grown one compatible
    module at a time and incompatible supersets are never visited.

    Raises:
        NotAPartitionError: If the modules overlap or miss a vertex
        NotAllIsModulesError: If a member is not an independent-set module
        BudgetExceededError: If there are more than ``budget`` assignable sets
    """
    modules = tuple(frozenset(m) for m in is_modules)
    seen: set[int] = set()
    for module in modules:
        if not module or seen & module:
            raise NotAPartitionError("Modules must be nonempty and pairwise disjoint")
        seen |= module
    if seen != set(range(g.n)):
        raise NotAPartitionError("Modules do not cover every vertex")
    for module in modules:
        if not is_antichain(g, module) or not is_module(g, module):
            raise NotAllIsModulesError(f"{sorted(module)} is not an independent-set module")

    masks = [mask_of(module) for module in modules]
    reached = [g.dominated_by(module) for module in modules]
    # later[i]: compatible modules with a larger index
    later = [
        mask_of(
            j
            for j in range(i + 1, len(modules))
            if not reached[i] & masks[j] and not reached[j] & masks[i]
        )
        for i in range(len(modules))
    ]

    sets: list[AssignableSet] = []
    stack = [((i,), masks[i], later[i]) for i in range(len(modules))]
    while stack:
        members, union, extensions = stack.pop()
        covered = g.dominated_by(iter_bits(union)).bit_count()
        sets.append(AssignableSet(members, union, g.n - covered))
        if budget is not None and len(sets) > budget:
            logger.warning(
                "is_modules.family_budget_exceeded", modules=len(modules), budget=budget
            )
            raise BudgetExceededError(
                f"More than {budget} assignable module sets over {len(modules)} modules"
            )
        for j in iter_bits(extensions):
            stack.append(((*members, j), union | masks[j], extensions & later[j]))
    sets.sort(key=lambda s: (len(s.members), s.members))
    return AssignableFamily(modules=modules, sets=tuple(sets))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write ``total`` as ``parts`` positive integers."""
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0, *cuts, total)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


@dataclass
class Guess:
    chosen: tuple[AssignableSet, ...]
    agents: tuple[int, ...]  # x_S


class IsModuleSolver:
    """Search guesses (used sets, agents per set) and thresholds.

    Args:
        inst: Instance to solve
        family: Assignable sets over an independent-set module partition
        guess_budget: Largest number of guesses to enumerate
    """

    def __init__(self, inst: Instance, family: AssignableFamily, guess_budget: int):
        self.inst = inst
        self.family = family
        self.guess_budget = guess_budget
        self.flow_calls = 0
        self.logger = get_logger(f"{__name__}.IsModuleSolver")

    def guess_count(self) -> int:
        k = self.inst.k
        count = len(self.family.sets)
        return sum(
            math.comb(count, size) * math.comb(k - 1, size - 1)
            for size in range(1, min(k, count) + 1)
        )

    def guesses(self) -> Iterator[Guess]:
        k = self.inst.k
        for size in range(1, min(k, len(self.family.sets)) + 1):
            for chosen in itertools.combinations(self.family.sets, size):
                for agents in compositions(k, size):
                    yield Guess(chosen, agents)

    def _residual_capacity(self, guess: Guess) -> Optional[list[int]]:
        """Vertices left per module once every S-agent has one from each I in S."""
        left = [len(module) for module in self.family.modules]
        for s, x in zip(guess.chosen, guess.agents):
            for i in s.members:
                left[i] -= x
        return None if min(left, default=0) < 0 else left

    def _network(self, guess: Guess, left: list[int], threshold: int):
        sets = len(guess.chosen)
        modules = len(self.family.modules)
        source, sink = sets + modules, sets + modules + 1
        net = FlowNetwork(node_count=sets + modules + 2, source=source, sink=sink)
        demand = 0
        arcs = {}
        for j, (s, x) in enumerate(zip(guess.chosen, guess.agents)):
            # S-agents need floor(Y / x) >= d_S + |union| - threshold
            need = (s.undominated + s.union_size - threshold) * x - len(s.members) * x
            if need > 0:
                net.add_arc(source, j, need)
                demand += need
            for i in s.members:
                arcs[(j, i)] = net.add_arc(j, sets + i)
        for i in range(modules):
            net.add_arc(sets + i, sink, left[i])
        return net, demand, arcs

    def feasible(self, guess: Guess, left: list[int], threshold: int) -> bool:
        net, demand, _ = self._network(guess, left, threshold)
        self.flow_calls += 1
        return demand == 0 or max_flow(net).value == demand

    def materialize(self, guess: Guess, left: list[int], threshold: int) -> Allocation:
        net, demand, arcs = self._network(guess, left, threshold)
        flow = max_flow(net)
        if flow.value != demand:
            raise AssertionError("Materialized threshold is not flow-feasible")

        free = [sorted(module) for module in self.family.modules]
        bundles: list[set[int]] = []
        for j, (s, x) in enumerate(zip(guess.chosen, guess.agents)):
            agents = [set() for _ in range(x)]
            pool: list[int] = []
            for i in s.members:
                for agent in agents:
                    agent.add(free[i].pop(0))
                for _ in range(flow.flows[arcs[(j, i)]]):
                    pool.append(free[i].pop(0))
            # spread the extras so bundle sizes differ by at most one
            for position, vertex in enumerate(pool):
                agents[position % x].add(vertex)
            bundles.extend(agents)
        return Allocation(tuple(frozenset(b) for b in bundles))

    def run(self) -> tuple[int, Allocation]:
        total = self.guess_count()
        if total > self.guess_budget:
            self.logger.warning(
                "is_modules.budget_exceeded", guesses=total, budget=self.guess_budget
            )
            raise BudgetExceededError(
                f"Independent-set solver needs {total} guesses, budget is {self.guess_budget}"
            )

        best = self.inst.n + 1
        best_guess: Optional[tuple[Guess, list[int]]] = None
        for guess in self.guesses():
            left = self._residual_capacity(guess)
            if left is None or best == 0 or not self.feasible(guess, left, best - 1):
                continue
            lo, hi = 0, best - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if self.feasible(guess, left, mid):
                    hi = mid
                else:
                    lo = mid + 1
            best, best_guess = lo, (guess, left)

        if best_guess is None:
            raise AssertionError("No guess admits any allocation")
        self.logger.debug(
            "is_modules.searched", guesses=total, flow_calls=self.flow_calls, optimum=best
        )
        guess, left = best_guess
        return best, self.materialize(guess, left, best)


def solve_is_modules(
    inst: Instance,
    fam: Optional[AssignableFamily] = None,
    guess_budget: Optional[int] = None,
) -> SolveResult:
    """Exact min-max dissatisfaction over an independent-set module partition.

    Without ``fam`` the twin classes of the graph are used; they always form
    such a partition, so the solver applies to every graph and its cost
    depends on how many classes there are.

    Raises:
        AgentCountError: If there are more agents than items
        BudgetExceededError: If the number of guesses exceeds ``guess_budget``
    """
    if inst.k > inst.n:
        raise AgentCountError(f"Independent-set solver needs k <= n (k={inst.k}, n={inst.n})")
    budget = config.guess_budget if guess_budget is None else guess_budget
    if fam is None:
        # every assignable set is a guess of its own
        fam = assignable_sets(inst.graph, twin_classes(inst.graph), budget=budget)
    solver = IsModuleSolver(inst, fam, budget)
    optimum, allocation = solver.run()
    logger.info(
        "is_modules.solved", optimum=optimum, modules=len(fam.modules), assignable=len(fam.sets)
    )
    return make_result(inst, allocation, SolverName.IS_MODULES, expected_optimum=optimum)
