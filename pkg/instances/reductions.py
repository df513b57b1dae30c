# instances/reductions.py

"""Graph k-coloring as a min-max dissatisfaction decision instance.

Every edge uv of the undirected graph H is replaced by a new vertex w with
arcs u->w and v->w. The instance takes k disjoint copies of that graph and
asks whether every agent can stay within ``diss`` missed items; this holds
exactly when H is k-colorable.

Numbering: copy c of original vertex t is ``c * |V| + t``; copy c of edge
vertex e is ``k * |V| + c * |E| + e``. Vertices and edges of H are indexed
in sorted order.
"""

from dataclasses import dataclass
from typing import Hashable, Mapping

import networkx as nx

from core.dag import build_dag
from core.exceptions import (
    AgentCountError,
    ImproperColoringError,
    InstanceFormatError,
    SolverInvariantError,
)
from core.logging import get_logger
from core.preferences import Allocation, Instance, dissatisfaction_profile

logger = get_logger(__name__)


@dataclass(frozen=True)
class ColoringReduction:
    """The instance built from H together with its vertex maps."""

    source: nx.Graph
    k: int
    instance: Instance
    diss: int
    vertex_order: tuple[Hashable, ...]
    edge_order: tuple[tuple[Hashable, Hashable], ...]
    original_copies: tuple[tuple[int, ...], ...]  # [copy][vertex index]
    edge_copies: tuple[tuple[int, ...], ...]  # [copy][edge index]


def reduce_coloring(h: nx.Graph, k: int) -> ColoringReduction:
    """Build the k-copy instance with threshold ``diss`` for graph ``h``.

    Raises:
        AgentCountError: If k < 3
        InstanceFormatError: If h has a self-loop
    """
    if k < 3:
        raise AgentCountError(f"Coloring reduction needs k >= 3, got {k}")
    if nx.number_of_selfloops(h):
        raise InstanceFormatError("Coloring input graph has a self-loop")

    vertex_order = tuple(sorted(h.nodes))
    index = {v: t for t, v in enumerate(vertex_order)}
    oriented = ((u, v) if index[u] < index[v] else (v, u) for u, v in h.edges)
    edge_order = tuple(sorted(oriented, key=lambda e: (index[e[0]], index[e[1]])))
    nv, ne = len(vertex_order), len(edge_order)

    original_copies = tuple(tuple(c * nv + t for t in range(nv)) for c in range(k))
    edge_copies = tuple(tuple(k * nv + c * ne + e for e in range(ne)) for c in range(k))
    arcs = []
    for c in range(k):
        for e, (u, v) in enumerate(edge_order):
            w = edge_copies[c][e]
            arcs.append((original_copies[c][index[u]], w))
            arcs.append((original_copies[c][index[v]], w))

    n = k * (nv + ne)
    # every original reaches itself and its incident edge vertices
    diss = k * (nv + ne) - nv - 3 * ne
    instance = Instance(build_dag(n, arcs), k, threshold=diss)
    logger.info("reductions.coloring", vertices=nv, edges=ne, k=k, n=n, diss=diss)
    return ColoringReduction(
        source=h,
        k=k,
        instance=instance,
        diss=diss,
        vertex_order=vertex_order,
        edge_order=edge_order,
        original_copies=original_copies,
        edge_copies=edge_copies,
    )


def check_coloring(red: ColoringReduction, coloring: Mapping[Hashable, int]):
    """Raise ImproperColoringError unless ``coloring`` properly k-colors H."""
    for v in red.vertex_order:
        if v not in coloring:
            raise ImproperColoringError(f"Vertex {v!r} has no color")
        if not 0 <= coloring[v] < red.k:
            raise ImproperColoringError(
                f"Vertex {v!r} has color {coloring[v]} outside [0, {red.k})"
            )
    for u, v in red.edge_order:
        if coloring[u] == coloring[v]:
            raise ImproperColoringError(
                f"Edge ({u!r}, {v!r}) joins two vertices of color {coloring[u]}"
            )


def coloring_to_allocation(red: ColoringReduction, coloring: Mapping[Hashable, int]) -> Allocation:
    """Allocation in which every agent misses exactly ``diss`` items.

    In copy 0, agent i takes the vertices of color i and each edge vertex
    goes to the lowest agent coloring neither endpoint. Copy j shifts every
    agent by j.

    Raises:
        ImproperColoringError: If ``coloring`` is not a proper k-coloring
    """
    check_coloring(red, coloring)
    k = red.k
    bundles: list[set[int]] = [set() for _ in range(k)]
    for j in range(k):
        for t, v in enumerate(red.vertex_order):
            bundles[(coloring[v] + j) % k].add(red.original_copies[j][t])
        for e, (u, v) in enumerate(red.edge_order):
            free = min(c for c in range(k) if c not in (coloring[u], coloring[v]))
            bundles[(free + j) % k].add(red.edge_copies[j][e])

    allocation = Allocation(tuple(frozenset(b) for b in bundles))
    profile = dissatisfaction_profile(red.instance, allocation)
    if any(value != red.diss for value in profile):
        raise SolverInvariantError(
            f"Coloring allocation misses {list(profile)} items, expected {red.diss} each"
        )
    return allocation
