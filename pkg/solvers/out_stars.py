# solvers/out_stars.py

"""Greedy solver for disjoint unions of out-stars and at least three agents."""

from dataclasses import dataclass

from core.dag import PreferenceGraph, is_out_star_collection
from core.exceptions import AgentCountError, NotOutStarsError
from core.logging import get_logger
from core.preferences import Allocation, Instance, SolveResult, SolverName, make_result

logger = get_logger(__name__)


@dataclass(frozen=True)
class StarProfile:
    """Nontrivial stars by decreasing leaf count, plus the isolated vertices."""

    nontrivial_stars: tuple[tuple[int, tuple[int, ...]], ...]  # (root, leaves)
    singleton_vertices: tuple[int, ...]

    @property
    def leaf_counts(self) -> tuple[int, ...]:
        return tuple(len(leaves) for _, leaves in self.nontrivial_stars)

    @property
    def singleton_count(self) -> int:
        return len(self.singleton_vertices)


def star_profile(g: PreferenceGraph) -> StarProfile:
    if not is_out_star_collection(g):
        raise NotOutStarsError("Graph is not a collection of out-stars")
    stars = [(v, g.out_adj[v]) for v in range(g.n) if g.out_adj[v]]
    stars.sort(key=lambda star: (-len(star[1]), star[0]))
    singletons = tuple(v for v in range(g.n) if not g.in_adj[v] and not g.out_adj[v])
    return StarProfile(nontrivial_stars=tuple(stars), singleton_vertices=singletons)


class OutStarGreedy:
    """Least-satisfied-first greedy with a single-swap repair.

    Roots are handed out first, biggest star first; then leaves and isolated
    vertices go one at a time to a least satisfied agent able to gain from
    them.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        self.profile = star_profile(inst.graph)
        self.k = inst.k
        self.satisfaction = [0] * self.k
        self.bundles: list[set[int]] = [set() for _ in range(self.k)]
        self.root_owner: dict[int, int] = {}
        self.root_of: dict[int, int] = {}
        self.exchanges = 0
        self.logger = get_logger(f"{__name__}.OutStarGreedy")

    def _least_satisfied_order(self) -> list[int]:
        return sorted(range(self.k), key=lambda a: (self.satisfaction[a], a))

    def _assign_roots(self):
        for root, leaves in self.profile.nontrivial_stars:
            agent = self._least_satisfied_order()[0]
            self.bundles[agent].add(root)
            self.root_owner[root] = agent
            self.satisfaction[agent] += 1 + len(leaves)
            for leaf in leaves:
                self.root_of[leaf] = root

    def _useful_to(self, agent: int, v: int) -> bool:
        root = self.root_of.get(v)
        return root is None or self.root_owner[root] != agent

    def _direct_item(
        self, agent: int, open_leaves: dict[int, list[int]], open_singletons: list[int]
    ):
        """Leaf of the fullest eligible star, else the lowest isolated vertex."""
        best_root = None
        for root, remaining in open_leaves.items():
            if not remaining or self.root_owner[root] == agent:
                continue
            if best_root is None or len(remaining) > len(open_leaves[best_root]):
                best_root = root
        if best_root is not None:
            return open_leaves[best_root][0]
        if open_singletons:
            return open_singletons[0]
        return None

    def _exchange_partner(self, agent: int):
        """Lowest-index agent holding a leaf or isolated vertex useful to ``agent``."""
        for other in range(self.k):
            if other == agent:
                continue
            for w in sorted(self.bundles[other]):
                if w in self.root_owner:
                    continue
                if self._useful_to(agent, w):
                    return other, w
        return None

    @staticmethod
    def _exchange_leaf(open_leaves: dict[int, list[int]]) -> int:
        """First open leaf of the star with the most open leaves."""
        root = max(open_leaves, key=lambda r: len(open_leaves[r]))
        return open_leaves[root][0]

    def run(self) -> Allocation:
        self._assign_roots()
        open_leaves = {root: list(leaves) for root, leaves in self.profile.nontrivial_stars}
        open_singletons = list(self.profile.singleton_vertices)
        remaining = sum(len(leaves) for leaves in open_leaves.values()) + len(open_singletons)

        while remaining:
            for agent in self._least_satisfied_order():
                v = self._direct_item(agent, open_leaves, open_singletons)
                if v is not None:
                    self._take(v, open_leaves, open_singletons)
                    self.bundles[agent].add(v)
                    self.satisfaction[agent] += 1
                    break

                # Everything left hangs under this agent's own roots.
                partner = self._exchange_partner(agent)
                if partner is not None:
                    other, w = partner
                    v = self._exchange_leaf(open_leaves)
                    self._take(v, open_leaves, open_singletons)
                    self.bundles[other].discard(w)
                    self.bundles[other].add(v)
                    self.bundles[agent].add(w)
                    self.satisfaction[agent] += 1
                    self.exchanges += 1
                    break
            else:
                raise AssertionError("No agent can take a remaining item")
            remaining -= 1

        self.logger.debug("out_stars.greedy", k=self.k, exchanges=self.exchanges)
        return Allocation(tuple(frozenset(bundle) for bundle in self.bundles))

    def _take(self, v: int, open_leaves: dict[int, list[int]], open_singletons: list[int]):
        root = self.root_of.get(v)
        if root is None:
            open_singletons.remove(v)
        else:
            open_leaves[root].remove(v)


def solve_out_stars(inst: Instance, force_greedy_k2: bool = False) -> SolveResult:
    """Optimal allocation for a collection of out-stars and k >= 3 agents.

    ``force_greedy_k2`` runs the greedy with two agents, where it is not
    optimal; it exists for tests only.

    Raises:
        NotOutStarsError: If the graph is not a collection of out-stars
        AgentCountError: If k < 3 (two agents belong to the two-agent solver)
    """
    if inst.k < 3 and not (force_greedy_k2 and inst.k == 2):
        raise AgentCountError(f"Out-star greedy needs at least three agents, got k={inst.k}")

    greedy = OutStarGreedy(inst)
    allocation = greedy.run()
    result = make_result(inst, allocation, SolverName.OUT_STARS)
    logger.info(
        "out_stars.solved",
        optimum=result.optimum,
        stars=len(greedy.profile.nontrivial_stars),
        singletons=greedy.profile.singleton_count,
        exchanges=greedy.exchanges,
    )
    return result
