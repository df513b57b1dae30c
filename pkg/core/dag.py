# core/dag.py

"""Preference graphs: validated DAGs with a reachability index.

Vertex sets are handled as Python ints used as bitsets; bit ``v`` stands for
vertex ``v``.
"""

import heapq
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .exceptions import CycleDetectedError, DuplicateArcError, InvalidVertexError, NotAForestError
from .logging import get_logger
from .matching import BipartiteGraph, max_bipartite_matching

logger = get_logger(__name__)

Bitset = int


def mask_of(vertices: Iterable[int]) -> Bitset:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: Bitset) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class PreferenceGraph:
    """An immutable DAG over items ``0..n-1``.

    Use :func:`build_dag` to construct one; it validates the arcs and fills
    the topological order and the reachability index.
    """

    n: int
    arcs: frozenset[tuple[int, int]]
    out_adj: tuple[tuple[int, ...], ...]
    in_adj: tuple[tuple[int, ...], ...]
    topo: tuple[int, ...]
    reach: tuple[Bitset, ...]  # reach[v] includes v itself

    @cached_property
    def pred(self) -> tuple[Bitset, ...]:
        """Transpose of ``reach``: pred[v] holds v and all its ancestors."""
        pred = [0] * self.n
        for u in range(self.n):
            for v in iter_bits(self.reach[u]):
                pred[v] |= 1 << u
        return tuple(pred)

    @cached_property
    def full_mask(self) -> Bitset:
        return (1 << self.n) - 1

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def reaches(self, u: int, v: int) -> bool:
        return bool((self.reach[u] >> v) & 1)

    def comparable(self, u: int, v: int) -> bool:
        return self.reaches(u, v) or self.reaches(v, u)

    def dominated_by(self, items: Iterable[int]) -> Bitset:
        """Union of the reach of ``items``."""
        mask = 0
        for v in items:
            mask |= self.reach[v]
        return mask

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])


def _find_cycle(in_adj: list[list[int]], remaining: set[int]) -> list[int]:
    """Walk backwards inside the vertices Kahn's algorithm could not remove."""
    start = min(remaining)
    seen: dict[int, int] = {}
    walk: list[int] = []
    v = start
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = next(u for u in in_adj[v] if u in remaining)
    cycle = walk[seen[v]:]
    cycle.reverse()
    return cycle


def build_dag(n: int, arcs: Iterable[tuple[int, int]]) -> PreferenceGraph:
    """Validate ``arcs`` over ``n`` items and build the preference graph.

    Raises:
        InvalidVertexError: If an endpoint lies outside ``[0, n)``
        DuplicateArcError: If an arc is listed twice
        CycleDetectedError: If the arcs contain a directed cycle
    """
    if n < 0:
        raise InvalidVertexError(f"Item count must be nonnegative, got {n}")

    arc_set: set[tuple[int, int]] = set()
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidVertexError(f"Arc ({u}, {v}) refers to a vertex outside [0, {n})")
        if u == v:
            raise CycleDetectedError(f"Loop at vertex {u}", cycle=[u])
        if (u, v) in arc_set:
            raise DuplicateArcError(f"Arc ({u}, {v}) listed twice")
        arc_set.add((u, v))
        out_adj[u].append(v)
        in_adj[v].append(u)
    for adjacency in (out_adj, in_adj):
        for neighbours in adjacency:
            neighbours.sort()

    # Kahn with a min-heap: the lexicographically smallest topological order
    indegree = [len(in_adj[v]) for v in range(n)]
    heap = [v for v in range(n) if indegree[v] == 0]
    heapq.heapify(heap)
    topo: list[int] = []
    while heap:
        u = heapq.heappop(heap)
        topo.append(u)
        for v in out_adj[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                heapq.heappush(heap, v)
    if len(topo) < n:
        cycle = _find_cycle(in_adj, set(range(n)) - set(topo))
        raise CycleDetectedError(f"Arcs contain the directed cycle {cycle}", cycle=cycle)

    reach = [0] * n
    for u in reversed(topo):
        mask = 1 << u
        for v in out_adj[u]:
            mask |= reach[v]
        reach[u] = mask

    logger.debug("dag.built", n=n, arcs=len(arc_set))
    return PreferenceGraph(
        n=n,
        arcs=frozenset(arc_set),
        out_adj=tuple(tuple(a) for a in out_adj),
        in_adj=tuple(tuple(a) for a in in_adj),
        topo=tuple(topo),
        reach=tuple(reach),
    )


def sources(g: PreferenceGraph) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if not g.in_adj[v])


def predecessors(g: PreferenceGraph, v: int) -> Bitset:
    return g.pred[v]


def is_antichain(g: PreferenceGraph, s: Iterable[int]) -> bool:
    """True iff no two distinct members of ``s`` are connected by a path."""
    members = list(s)
    mask = mask_of(members)
    return all(g.reach[v] & mask == 1 << v for v in members)


@dataclass(frozen=True)
class WidthCertificate:
    """Minimum chain partition and a maximum antichain of equal size."""

    width: int
    chains: tuple[tuple[int, ...], ...]
    antichain_witness: frozenset[int]


def width_and_chain_partition(g: PreferenceGraph) -> WidthCertificate:
    """Dilworth certificate via maximum matching on the split closure graph.

    Left copy u is joined to right copy v whenever u strictly reaches v.
    Matched pairs link consecutive chain vertices; the vertices whose two
    copies both avoid the König cover form a maximum antichain.
    """
    edges = tuple(
        (u, v) for u in range(g.n) for v in iter_bits(g.reach[u]) if v != u
    )
    matching = max_bipartite_matching(BipartiteGraph(g.n, g.n, edges))
    successor = matching.mate_of_left()
    has_predecessor = set(successor.values())

    chains = []
    for start in range(g.n):
        if start in has_predecessor:
            continue
        chain = [start]
        while chain[-1] in successor:
            chain.append(successor[chain[-1]])
        chains.append(tuple(chain))

    antichain = frozenset(
        v
        for v in range(g.n)
        if v not in matching.cover_left and v not in matching.cover_right
    )
    width = g.n - matching.size
    if len(chains) != width or len(antichain) != width:
        raise AssertionError("Chain partition and antichain sizes disagree")

    logger.debug("dag.width", n=g.n, width=width)
    return WidthCertificate(width=width, chains=tuple(chains), antichain_witness=antichain)


def levels(g: PreferenceGraph) -> tuple[int, ...]:
    """Vertex count of a longest path ending at each vertex; sources get 1."""
    level = [1] * g.n
    for u in g.topo:
        for v in g.out_adj[u]:
            level[v] = max(level[v], level[u] + 1)
    return tuple(level)


def top_levels(g: PreferenceGraph, k: int) -> Bitset:
    """Vertices of level at most ``k``.

    Some optimal allocation for ``k`` agents only uses these vertices.
    """
    return mask_of(v for v, lvl in enumerate(levels(g)) if lvl <= k)


def is_out_forest(g: PreferenceGraph) -> bool:
    return all(len(parents) <= 1 for parents in g.in_adj)


def depth(g: PreferenceGraph, v: int) -> int:
    """Vertex count of the unique maximal path ending at ``v`` in an out-forest."""
    if not is_out_forest(g):
        raise NotAForestError("Depth is only defined on out-forests")
    if not 0 <= v < g.n:
        raise InvalidVertexError(f"Vertex {v} outside [0, {g.n})")
    d = 1
    while g.in_adj[v]:
        v = g.in_adj[v][0]
        d += 1
    return d


class ShapeTag(str, Enum):
    """Graph classes with a dedicated solver."""

    EDGELESS = "edgeless"
    DIRECTED_MATCHING = "directed_matching"
    OUT_STAR_COLLECTION = "out_star_collection"
    OUT_FOREST = "out_forest"
    WIDTH_LE_2 = "width_le_2"
    GENERAL = "general"


def is_out_star_collection(g: PreferenceGraph) -> bool:
    """Every arc joins a root (in-degree 0) to a leaf (out-degree 0)."""
    return is_out_forest(g) and all(
        not g.in_adj[u] and not g.out_adj[v] for u, v in g.arcs
    )


def is_directed_matching(g: PreferenceGraph, allow_isolated: bool = False) -> bool:
    """Disjoint union of single arcs, optionally with isolated vertices."""
    if not g.arcs:
        return False
    degree_ok = (0, 1) if allow_isolated else (1,)
    return all(
        len(g.in_adj[v]) + len(g.out_adj[v]) in degree_ok for v in range(g.n)
    )


def classify_shape(
    g: PreferenceGraph, cert: Optional[WidthCertificate] = None
) -> frozenset[ShapeTag]:
    """Shape tags of ``g``; GENERAL marks every graph that is not an out-forest.

    Pass ``cert`` to reuse a width computation the caller already has.
    """
    tags: set[ShapeTag] = set()
    if not g.arcs:
        tags.add(ShapeTag.EDGELESS)
    if is_directed_matching(g):
        tags.add(ShapeTag.DIRECTED_MATCHING)
    if is_out_star_collection(g):
        tags.add(ShapeTag.OUT_STAR_COLLECTION)
    if is_out_forest(g):
        tags.add(ShapeTag.OUT_FOREST)
    else:
        tags.add(ShapeTag.GENERAL)
    if (cert or width_and_chain_partition(g)).width <= 2:
        tags.add(ShapeTag.WIDTH_LE_2)
    return frozenset(tags)
