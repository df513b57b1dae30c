# solvers/width_two.py

"""Bottleneck matching solver for preference graphs of width at most two."""

from dataclasses import dataclass
from typing import Optional

from core.dag import WidthCertificate, is_antichain, width_and_chain_partition
from core.exceptions import AgentCountError, WidthTooLargeError
from core.logging import get_logger
from core.matching import WeightedBipartiteGraph, bottleneck_k_matching
from core.preferences import Allocation, Instance, SolveResult, SolverName, make_result

logger = get_logger(__name__)


@dataclass(frozen=True)
class AuxiliaryMatchingGraph:
    """Bipartite graph whose edges are the possible antichain bundles.

    With chains P and Q, the left side is P plus copies of Q and the right
    side is Q plus copies of P. An edge between x in P and y in Q stands for
    the bundle {x, y} (only when x, y are incomparable); an edge between a
    vertex and its own copy stands for the bundle {v}. Edge weights are the
    dissatisfaction of an agent receiving that bundle.
    """

    graph: WeightedBipartiteGraph
    bundles: dict[tuple[int, int], frozenset[int]]


def build_auxiliary_graph(inst: Instance, cert: WidthCertificate) -> AuxiliaryMatchingGraph:
    g = inst.graph
    chains = list(cert.chains) + [()] * (2 - len(cert.chains))
    p_chain, q_chain = chains[0], chains[1]

    left_of = {x: i for i, x in enumerate(p_chain)}
    left_copy_of = {y: len(p_chain) + i for i, y in enumerate(q_chain)}
    right_of = {y: i for i, y in enumerate(q_chain)}
    right_copy_of = {x: len(q_chain) + i for i, x in enumerate(p_chain)}

    edges: list[tuple[int, int, int]] = []
    bundles: dict[tuple[int, int], frozenset[int]] = {}

    def add(left: int, right: int, bundle: frozenset[int]):
        edges.append((left, right, g.n - g.dominated_by(bundle).bit_count()))
        bundles[(left, right)] = bundle

    for x in p_chain:
        for y in q_chain:
            if is_antichain(g, (x, y)):
                add(left_of[x], right_of[y], frozenset((x, y)))
    for x in p_chain:
        add(left_of[x], right_copy_of[x], frozenset((x,)))
    for y in q_chain:
        add(left_copy_of[y], right_of[y], frozenset((y,)))

    side = len(p_chain) + len(q_chain)
    return AuxiliaryMatchingGraph(WeightedBipartiteGraph(side, side, tuple(edges)), bundles)


def solve_width_two(inst: Instance, cert: Optional[WidthCertificate] = None) -> SolveResult:
    """Optimal allocation when the preference graph has width at most two.

    Every agent receives an antichain, so at most one vertex of each chain;
    an optimal allocation is a cardinality-k matching in the auxiliary graph
    minimizing its heaviest edge.

    Raises:
        WidthTooLargeError: If the graph has width three or more
        AgentCountError: If there are more agents than items
    """
    if cert is None:
        cert = width_and_chain_partition(inst.graph)
    if cert.width > 2:
        raise WidthTooLargeError(f"Width-two solver called on a graph of width {cert.width}")
    if inst.k > inst.n:
        raise AgentCountError(f"Width-two solver needs k <= n (k={inst.k}, n={inst.n})")

    aux = build_auxiliary_graph(inst, cert)
    matching = bottleneck_k_matching(aux.graph, inst.k)
    allocation = Allocation(tuple(aux.bundles[(left, right)] for left, right, _ in matching.pairs))

    logger.info(
        "width_two.solved",
        optimum=matching.bottleneck,
        k=inst.k,
        auxiliary_edges=len(aux.graph.edges),
    )
    return make_result(inst, allocation, SolverName.WIDTH_TWO, expected_optimum=matching.bottleneck)
