"""Reference computations shared by the test modules."""

import itertools
from pathlib import Path

import networkx as nx

from core.dag import PreferenceGraph
from core.preferences import Allocation, Instance, dissatisfaction_profile, max_dissatisfaction

FIXTURES = Path(__file__).parent / "fixtures"


def to_networkx(g: PreferenceGraph) -> nx.DiGraph:
    """Independent copy of ``g`` for reference computations."""
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(g.n))
    digraph.add_edges_from(g.arcs)
    return digraph


def naive_optimum(inst: Instance) -> int:
    """Try every map of items to agents or nobody; only for tiny instances."""
    best = inst.n
    for owners in itertools.product(range(inst.k + 1), repeat=inst.n):
        bundles = [
            [v for v, owner in enumerate(owners) if owner == agent] for agent in range(inst.k)
        ]
        value = max_dissatisfaction(dissatisfaction_profile(inst, Allocation.from_bundles(bundles)))
        best = min(best, value)
    return best
