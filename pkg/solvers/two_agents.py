# solvers/two_agents.py

from core.dag import sources
from core.exceptions import AgentCountError
from core.logging import get_logger
from core.preferences import Allocation, Instance, SolveResult, SolverName, make_result

logger = get_logger(__name__)


def solve_two_agents(inst: Instance) -> SolveResult:
    """Optimal allocation for two agents.

    The sources are split into halves S1 (the lower ⌊|S|/2⌋ indices) and S2.
    Every non-source whose in-neighbours are all sources goes to the agent
    whose half does not already reach it; such a vertex always has an
    in-neighbour in at least one half. Each agent then misses exactly the
    other half of the sources, which is optimal since every source is missed
    by the agent not holding it.
    """
    if inst.k != 2:
        raise AgentCountError(f"Two-agent solver called with k={inst.k}")
    if inst.n < 2:
        raise AgentCountError(f"Two agents need at least two items, got n={inst.n}")

    g = inst.graph
    source_list = sorted(sources(g))
    half = len(source_list) // 2
    first = frozenset(source_list[:half])
    second = frozenset(source_list[half:])

    second_layer = [
        v for v in range(g.n) if g.in_adj[v] and all(not g.in_adj[u] for u in g.in_adj[v])
    ]
    first_extra = {v for v in second_layer if not any(u in first for u in g.in_adj[v])}
    second_extra = {v for v in second_layer if not any(u in second for u in g.in_adj[v])}

    optimum = len(second)
    allocation = Allocation((first | first_extra, second | second_extra))
    logger.info("two_agents.solved", optimum=optimum, sources=len(source_list))
    return make_result(
        inst,
        allocation,
        SolverName.TWO_AGENTS,
        expected_optimum=optimum,
        note=f"each source is missed by one agent: max >= ceil({len(source_list)}/2) = {optimum}",
    )
