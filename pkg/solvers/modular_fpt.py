# solvers/modular_fpt.py

"""Guess-and-flow solver parameterized by agents plus modules.

Each guess fixes, per path module, which agent takes each of its top
min(size, k) vertices, and per independent-set module, which agents take at
least one vertex. After dropping dominated items, a flow network decides
how the remaining independent-set vertices can lift every agent to a target
satisfaction.
"""

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from core.config import config
from core.dag import Bitset, iter_bits
from core.exceptions import BudgetExceededError
from core.logging import get_logger
from core.matching import FlowNetwork, max_flow
from core.preferences import Allocation, Instance, SolveResult, SolverName, make_result

from .modules import ModularPartition, Module, ModuleKind, modular_partition

logger = get_logger(__name__)

# Per module: agent for each top path vertex, or the agents sharing an IS module
ModuleGuess = tuple[int, ...]


@dataclass
class GuessState:
    """Partial allocation of one guess after dropping dominated items."""

    guess: tuple[ModuleGuess, ...]
    bundles: list[Bitset]
    satisfaction: list[int]
    eligible: list[set[int]]  # per IS module: agents still holding an undominated vertex
    unassigned: list[list[int]]  # per IS module: free vertices, lowest index first


def count_guesses(partition: ModularPartition, k: int) -> int:
    total = 1
    for position, module in enumerate(partition.modules):
        total *= len(_module_options(module, k, canonical=position == 0))
    return total


def _module_options(module: Module, k: int, canonical: bool) -> list[ModuleGuess]:
    """Options for one module; the first module is fixed up to agent renaming."""
    if module.kind == ModuleKind.PATH:
        top = min(module.size, k)
        if canonical:
            return [tuple(range(top))]
        return list(itertools.permutations(range(k), top))
    largest = min(module.size, k)
    if canonical:
        return [tuple(range(size)) for size in range(1, largest + 1)]
    return [
        agents
        for size in range(1, largest + 1)
        for agents in itertools.combinations(range(k), size)
    ]


class ModularFPT:
    """Enumerate guesses and keep the best flow-certified target satisfaction.

    Args:
        inst: Instance to solve
        partition: Partition of the graph into path and IS modules
        guess_budget: Largest number of guesses to enumerate
    """

    def __init__(self, inst: Instance, partition: ModularPartition, guess_budget: int):
        self.inst = inst
        self.partition = partition
        self.guess_budget = guess_budget
        self.is_modules = [m for m in partition.modules if m.kind == ModuleKind.INDEPENDENT_SET]
        self.flow_calls = 0
        self.logger = get_logger(f"{__name__}.ModularFPT")

    def guesses(self) -> Iterator[tuple[ModuleGuess, ...]]:
        options = [
            _module_options(module, self.inst.k, canonical=position == 0)
            for position, module in enumerate(self.partition.modules)
        ]
        return itertools.product(*options)

    def evaluate(self, guess: tuple[ModuleGuess, ...]) -> GuessState:
        g = self.inst.graph
        k = self.inst.k
        bundles = [0] * k
        for module, agents in zip(self.partition.modules, guess):
            # path vertices top-down; IS modules hand their lowest vertices out
            for vertex, agent in zip(module.vertices, agents):
                bundles[agent] |= 1 << vertex

        # Drop items dominated inside their own bundle.
        for agent in range(k):
            mask = bundles[agent]
            bundles[agent] = sum(
                1 << v for v in iter_bits(mask) if g.pred[v] & mask == 1 << v
            )

        satisfaction = [
            self._cover(mask).bit_count() for mask in bundles
        ]
        held = 0
        for mask in bundles:
            held |= mask
        eligible = [
            {agent for agent in range(k) if bundles[agent] & module.mask}
            for module in self.is_modules
        ]
        unassigned = [
            [v for v in module.vertices if not (held >> v) & 1] for module in self.is_modules
        ]
        return GuessState(guess, bundles, satisfaction, eligible, unassigned)

    def _cover(self, mask: Bitset) -> Bitset:
        return self.inst.graph.dominated_by(iter_bits(mask))

    def _network(self, state: GuessState, target: int) -> tuple[FlowNetwork, int, dict]:
        """Source, agents, IS modules, sink; returns the demand and agent-module arcs."""
        k = self.inst.k
        modules = len(self.is_modules)
        source, sink = k + modules, k + modules + 1
        net = FlowNetwork(node_count=k + modules + 2, source=source, sink=sink)
        demand = 0
        for agent in range(k):
            missing = target - state.satisfaction[agent]
            if missing > 0:
                net.add_arc(source, agent, missing)
                demand += missing
        arcs = {}
        for i, agents in enumerate(state.eligible):
            for agent in sorted(agents):
                if state.satisfaction[agent] < target:
                    arcs[(agent, i)] = net.add_arc(agent, k + i)
            net.add_arc(k + i, sink, len(state.unassigned[i]))
        return net, demand, arcs

    def feasible(self, state: GuessState, target: int) -> bool:
        net, demand, _ = self._network(state, target)
        self.flow_calls += 1
        return demand == 0 or max_flow(net).value == demand

    def materialize(self, state: GuessState, target: int) -> Allocation:
        net, demand, arcs = self._network(state, target)
        flow = max_flow(net)
        if flow.value != demand:
            raise AssertionError("Materialized target is not flow-feasible")
        bundles = [set(iter_bits(mask)) for mask in state.bundles]
        free = [list(vertices) for vertices in state.unassigned]
        for (agent, i), index in sorted(arcs.items()):
            for _ in range(flow.flows[index]):
                bundles[agent].add(free[i].pop(0))
        return Allocation(tuple(frozenset(b) for b in bundles))

    def run(self) -> tuple[int, Allocation]:
        total = count_guesses(self.partition, self.inst.k)
        if total > self.guess_budget:
            self.logger.warning(
                "modular_fpt.budget_exceeded", guesses=total, budget=self.guess_budget
            )
            raise BudgetExceededError(
                f"Modular solver needs {total} guesses, budget is {self.guess_budget}"
            )

        n = self.inst.n
        best_target = -1
        best_state: Optional[GuessState] = None
        for guess in self.guesses():
            state = self.evaluate(guess)
            if best_target >= n or not self.feasible(state, best_target + 1):
                continue
            lo, hi = best_target + 1, n
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if self.feasible(state, mid):
                    lo = mid
                else:
                    hi = mid - 1
            best_target, best_state = lo, state

        if best_state is None:
            raise AssertionError("No guess reached satisfaction zero")
        self.logger.debug(
            "modular_fpt.searched",
            guesses=total,
            flow_calls=self.flow_calls,
            best_satisfaction=best_target,
        )
        return n - best_target, self.materialize(best_state, best_target)


def solve_modular_fpt(
    inst: Instance,
    mp: Optional[ModularPartition] = None,
    guess_budget: Optional[int] = None,
) -> SolveResult:
    """Exact min-max dissatisfaction by guessing module assignments.

    Raises:
        BudgetExceededError: If the number of guesses exceeds ``guess_budget``
    """
    if mp is None:
        mp = modular_partition(inst.graph)
    solver = ModularFPT(
        inst, mp, config.guess_budget if guess_budget is None else guess_budget
    )
    optimum, allocation = solver.run()
    logger.info("modular_fpt.solved", optimum=optimum, d=mp.d, k=inst.k)
    return make_result(inst, allocation, SolverName.MODULAR_FPT, expected_optimum=optimum)

