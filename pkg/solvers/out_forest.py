# solvers/out_forest.py

"""Dynamic program over dissatisfaction profiles for out-forests."""

from typing import Iterable, Optional

from core.config import config
from core.dag import is_out_forest, levels
from core.exceptions import NotAForestError, StateSpaceExceededError
from core.logging import get_logger
from core.preferences import Allocation, Instance, SolveResult, SolverName, make_result

logger = get_logger(__name__)

Profile = tuple[int, ...]
# profile -> (agent holding the vertex or None, summed children profile)
ChoiceTable = dict[Profile, tuple[Optional[int], Profile]]
# combined profile -> (profile before this step, profile of the added part)
FoldStep = dict[Profile, tuple[Profile, Profile]]


class ProfileDP:
    """Bottom-up profile sets with back-pointers for reconstruction.

    The profile of a subtree lists, per agent, how many subtree vertices the
    agent's holdings inside the subtree fail to dominate.

    Args:
        inst: Instance over an out-forest
        prune_depth: Drop vertices deeper than k; their counts move to the
            boundary vertex
        state_cap: Largest profile set allowed
    """

    def __init__(self, inst: Instance, prune_depth: bool = True, state_cap: Optional[int] = None):
        g = inst.graph
        if not is_out_forest(g):
            raise NotAForestError("Out-forest solver needs in-degree at most one everywhere")
        self.inst = inst
        self.k = inst.k
        self.state_cap = config.dp_state_cap if state_cap is None else state_cap
        self.zero: Profile = (0,) * self.k

        depth = levels(g)
        self.kept = [v for v in g.topo if not prune_depth or depth[v] <= self.k]
        kept_set = set(self.kept)
        self.children = {v: [c for c in g.out_adj[v] if c in kept_set] for v in self.kept}
        # vertices below the boundary count as undominated for agents not holding it
        self.removed_below = {
            v: (g.reach[v].bit_count() - 1 if not self.children[v] else 0) for v in self.kept
        }
        self.roots = [v for v in self.kept if not g.in_adj[v]]

        self.table: dict[int, ChoiceTable] = {}
        self.child_steps: dict[int, list[FoldStep]] = {}
        self.root_steps: list[FoldStep] = []
        self.largest_set = 0
        self.logger = get_logger(f"{__name__}.ProfileDP")

    def _fold(self, parts: Iterable[Iterable[Profile]]) -> tuple[list[Profile], list[FoldStep]]:
        """Pairwise sums of the parts, deduplicated, starting from the zero profile."""
        accumulated: list[Profile] = [self.zero]
        steps: list[FoldStep] = []
        for part in parts:
            part = list(part)
            step: FoldStep = {}
            for a in accumulated:
                for b in part:
                    combined = tuple(x + y for x, y in zip(a, b))
                    if combined not in step:
                        step[combined] = (a, b)
            self._check_size(len(step))
            steps.append(step)
            accumulated = list(step)
        return accumulated, steps

    def _check_size(self, size: int):
        self.largest_set = max(self.largest_set, size)
        if size > self.state_cap:
            raise StateSpaceExceededError(
                f"Profile set of size {size} exceeds the cap of {self.state_cap}"
            )

    def _solve_vertex(self, v: int):
        children_sums, steps = self._fold(self.table[c].keys() for c in self.children[v])
        self.child_steps[v] = steps
        extra = self.removed_below[v]

        table: ChoiceTable = {}
        for summed in children_sums:
            for holder in range(self.k):
                profile = tuple(
                    0 if agent == holder else 1 + extra + summed[agent] for agent in range(self.k)
                )
                table.setdefault(profile, (holder, summed))
            if not self.children[v]:
                table.setdefault(tuple(1 + extra + x for x in summed), (None, summed))
        self._check_size(len(table))
        self.table[v] = table

    def run(self) -> tuple[int, Allocation]:
        for v in reversed(self.kept):
            self._solve_vertex(v)
        finals, self.root_steps = self._fold(self.table[r].keys() for r in self.roots)
        best = min(finals, key=lambda profile: (max(profile, default=0), profile))

        bundles: list[set[int]] = [set() for _ in range(self.k)]
        for root, profile in zip(self.roots, self._unfold(best, self.root_steps)):
            self._reconstruct(root, profile, bundles)

        self.logger.debug(
            "out_forest.dp",
            kept_vertices=len(self.kept),
            largest_set=self.largest_set,
            final_profiles=len(finals),
        )
        return max(best, default=0), Allocation(tuple(frozenset(b) for b in bundles))

    @staticmethod
    def _unfold(profile: Profile, steps: list[FoldStep]) -> list[Profile]:
        parts = []
        for step in reversed(steps):
            profile, part = step[profile]
            parts.append(part)
        parts.reverse()
        return parts

    def _reconstruct(self, v: int, profile: Profile, bundles: list[set[int]]):
        stack = [(v, profile)]
        while stack:
            vertex, prof = stack.pop()
            holder, summed = self.table[vertex][prof]
            if holder is not None:
                bundles[holder].add(vertex)
            for child, child_profile in zip(
                self.children[vertex], self._unfold(summed, self.child_steps[vertex])
            ):
                stack.append((child, child_profile))


def solve_out_forest(
    inst: Instance,
    prune_depth: bool = True,
    k_cap: Optional[int] = None,
    state_cap: Optional[int] = None,
) -> SolveResult:
    """Optimal allocation on an out-forest for a small number of agents.

    Raises:
        NotAForestError: If some vertex has in-degree two or more
        StateSpaceExceededError: If k exceeds ``k_cap`` or a profile set
            outgrows ``state_cap``
    """
    k_cap = config.dp_k_cap if k_cap is None else k_cap
    if inst.k > k_cap:
        raise StateSpaceExceededError(f"Out-forest solver capped at k={k_cap}, got k={inst.k}")

    dp = ProfileDP(inst, prune_depth=prune_depth, state_cap=state_cap)
    optimum, allocation = dp.run()
    logger.info("out_forest.solved", optimum=optimum, k=inst.k, largest_set=dp.largest_set)
    return make_result(inst, allocation, SolverName.OUT_FOREST, expected_optimum=optimum)
