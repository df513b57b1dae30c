# core/matching.py

"""Bipartite matching, bottleneck k-matching and integral maximum flow.

All routines are deterministic: neighbours and residual arcs are scanned in
index order, so repeated runs return identical matchings and flows.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .exceptions import DuplicateArcError, InfeasibleMatchingError, InvalidVertexError
from .logging import get_logger

logger = get_logger(__name__)

# NIL partner in the matching arrays
_FREE = -1


@dataclass(frozen=True)
class BipartiteGraph:
    """Unweighted bipartite graph with sequentially indexed sides."""

    left_size: int
    right_size: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for left, right in self.edges:
            if not (0 <= left < self.left_size and 0 <= right < self.right_size):
                raise InvalidVertexError(f"Edge ({left}, {right}) outside the bipartition")

    @cached_property
    def adj_left(self) -> tuple[tuple[int, ...], ...]:
        adjacency: list[set[int]] = [set() for _ in range(self.left_size)]
        for left, right in self.edges:
            adjacency[left].add(right)
        return tuple(tuple(sorted(neighbours)) for neighbours in adjacency)


@dataclass(frozen=True)
class Matching:
    """A maximum matching together with a minimum vertex cover (König)."""

    pairs: tuple[tuple[int, int], ...]
    cover_left: frozenset[int] = frozenset()
    cover_right: frozenset[int] = frozenset()

    @property
    def size(self) -> int:
        return len(self.pairs)

    def mate_of_left(self) -> dict[int, int]:
        return dict(self.pairs)


class HopcroftKarp:
    """Hopcroft-Karp maximum-cardinality matching, storing the search state."""

    def __init__(self, graph: BipartiteGraph):
        self.graph = graph
        self.mate_left = [_FREE] * graph.left_size
        self.mate_right = [_FREE] * graph.right_size
        self._dist: list[int] = []
        self._inf = graph.left_size + 1

    def _layer(self) -> bool:
        """BFS from free left vertices; True if some augmenting path exists."""
        queue: deque[int] = deque()
        self._dist = [self._inf] * self.graph.left_size
        for u in range(self.graph.left_size):
            if self.mate_left[u] == _FREE:
                self._dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in self.graph.adj_left[u]:
                w = self.mate_right[v]
                if w == _FREE:
                    found = True
                elif self._dist[w] == self._inf:
                    self._dist[w] = self._dist[u] + 1
                    queue.append(w)
        return found

    def _augment(self, u: int) -> bool:
        for v in self.graph.adj_left[u]:
            w = self.mate_right[v]
            if w == _FREE or (self._dist[w] == self._dist[u] + 1 and self._augment(w)):
                self.mate_left[u] = v
                self.mate_right[v] = u
                return True
        # do not revisit u in this phase
        self._dist[u] = self._inf
        return False

    def __call__(self) -> Matching:
        self.mate_left = [_FREE] * self.graph.left_size
        self.mate_right = [_FREE] * self.graph.right_size
        while self._layer():
            for u in range(self.graph.left_size):
                if self.mate_left[u] == _FREE:
                    self._augment(u)
        pairs = tuple(
            (u, v) for u, v in enumerate(self.mate_left) if v != _FREE
        )
        cover_left, cover_right = self._konig_cover()
        return Matching(pairs=pairs, cover_left=cover_left, cover_right=cover_right)

    def _konig_cover(self) -> tuple[frozenset[int], frozenset[int]]:
        """Minimum vertex cover from alternating reachability of free left vertices."""
        visited_left = set()
        visited_right = set()
        queue: deque[int] = deque()
        for u in range(self.graph.left_size):
            if self.mate_left[u] == _FREE:
                visited_left.add(u)
                queue.append(u)
        while queue:
            u = queue.popleft()
            for v in self.graph.adj_left[u]:
                if v in visited_right or self.mate_left[u] == v:
                    continue
                visited_right.add(v)
                w = self.mate_right[v]
                if w != _FREE and w not in visited_left:
                    visited_left.add(w)
                    queue.append(w)
        cover_left = frozenset(range(self.graph.left_size)) - visited_left
        return cover_left, frozenset(visited_right)


def max_bipartite_matching(graph: BipartiteGraph) -> Matching:
    """Maximum matching of ``graph`` with a König vertex cover of equal size."""
    return HopcroftKarp(graph)()


@dataclass(frozen=True)
class WeightedBipartiteGraph:
    """Bipartite graph with nonnegative integer edge weights."""

    left_size: int
    right_size: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for left, right, weight in self.edges:
            if not (0 <= left < self.left_size and 0 <= right < self.right_size):
                raise InvalidVertexError(f"Edge ({left}, {right}) outside the bipartition")
            if weight < 0:
                raise ValueError(f"Edge ({left}, {right}) has negative weight {weight}")
            if (left, right) in seen:
                raise DuplicateArcError(f"Edge ({left}, {right}) listed twice")
            seen.add((left, right))

    def thresholded(self, limit: int) -> BipartiteGraph:
        """Unweighted subgraph keeping edges of weight at most ``limit``."""
        return BipartiteGraph(
            self.left_size,
            self.right_size,
            tuple((left, right) for left, right, weight in self.edges if weight <= limit),
        )


@dataclass(frozen=True)
class BottleneckMatching:
    """A cardinality-k matching and its largest edge weight."""

    bottleneck: int
    pairs: tuple[tuple[int, int, int], ...]


def bottleneck_k_matching(graph: WeightedBipartiteGraph, k: int) -> BottleneckMatching:
    """Cardinality-k matching minimizing the largest edge weight.

    Binary search over the sorted distinct weights; a threshold is feasible
    when the thresholded subgraph has a matching of size at least k.

    Raises:
        InfeasibleMatchingError: If no matching of size k exists at all
    """
    if k < 0:
        raise ValueError(f"Cardinality must be nonnegative, got {k}")
    if k == 0:
        return BottleneckMatching(bottleneck=0, pairs=())

    weights = sorted({weight for _, _, weight in graph.edges})
    if not weights or max_bipartite_matching(graph.thresholded(weights[-1])).size < k:
        raise InfeasibleMatchingError(f"No matching of cardinality {k} exists")

    lo, hi = 0, len(weights) - 1
    calls = 1
    while lo < hi:
        mid = (lo + hi) // 2
        calls += 1
        if max_bipartite_matching(graph.thresholded(weights[mid])).size >= k:
            hi = mid
        else:
            lo = mid + 1

    matching = max_bipartite_matching(graph.thresholded(weights[lo]))
    weight_of = {(left, right): weight for left, right, weight in graph.edges}
    chosen = sorted(
        ((left, right, weight_of[(left, right)]) for left, right in matching.pairs),
        key=lambda edge: (edge[2], edge[0], edge[1]),
    )[:k]

    logger.debug("bottleneck.solved", k=k, bottleneck=weights[lo], matching_calls=calls)
    return BottleneckMatching(bottleneck=max(edge[2] for edge in chosen), pairs=tuple(chosen))


@dataclass
class FlowArc:
    tail: int
    head: int
    capacity: Optional[int]  # None means unbounded


@dataclass
class FlowNetwork:
    """Directed network with integral capacities.

    Unbounded arcs are stored with capacity ``None`` and replaced at solve
    time by the total capacity leaving the source, which no flow can exceed.
    """

    node_count: int
    source: int
    sink: int
    arcs: list[FlowArc] = field(default_factory=list)

    def add_arc(self, tail: int, head: int, capacity: Optional[int] = None) -> int:
        """Add an arc and return its index."""
        if not (0 <= tail < self.node_count and 0 <= head < self.node_count):
            raise InvalidVertexError(f"Arc ({tail}, {head}) outside the network")
        if capacity is not None and capacity < 0:
            raise ValueError(f"Arc ({tail}, {head}) has negative capacity {capacity}")
        self.arcs.append(FlowArc(tail, head, capacity))
        return len(self.arcs) - 1

    def surrogate_capacity(self) -> int:
        return sum(
            arc.capacity
            for arc in self.arcs
            if arc.tail == self.source and arc.capacity is not None
        )


@dataclass(frozen=True)
class FlowResult:
    """Maximum flow value, per-arc flows and the source side of a minimum cut."""

    value: int
    flows: tuple[int, ...]
    source_side: frozenset[int]


def max_flow(net: FlowNetwork) -> FlowResult:
    """Integral maximum flow by shortest augmenting paths (Edmonds-Karp)."""
    unbounded = net.surrogate_capacity()

    # Residual arc 2i is arc i, 2i+1 its reverse.
    heads: list[int] = []
    residual: list[int] = []
    out: list[list[int]] = [[] for _ in range(net.node_count)]
    for arc in net.arcs:
        capacity = unbounded if arc.capacity is None else arc.capacity
        out[arc.tail].append(len(heads))
        heads.append(arc.head)
        residual.append(capacity)
        out[arc.head].append(len(heads))
        heads.append(arc.tail)
        residual.append(0)

    value = 0
    while True:
        parent_arc = [-1] * net.node_count
        reached = [False] * net.node_count
        reached[net.source] = True
        queue: deque[int] = deque([net.source])
        while queue and not reached[net.sink]:
            u = queue.popleft()
            for a in out[u]:
                v = heads[a]
                if residual[a] > 0 and not reached[v]:
                    reached[v] = True
                    parent_arc[v] = a
                    queue.append(v)
        if not reached[net.sink] or net.source == net.sink:
            break

        bottleneck = None
        v = net.sink
        while v != net.source:
            a = parent_arc[v]
            bottleneck = residual[a] if bottleneck is None else min(bottleneck, residual[a])
            v = heads[a ^ 1]
        v = net.sink
        while v != net.source:
            a = parent_arc[v]
            residual[a] -= bottleneck
            residual[a ^ 1] += bottleneck
            v = heads[a ^ 1]
        value += bottleneck

    flows = tuple(residual[2 * i + 1] for i in range(len(net.arcs)))
    source_side = frozenset(v for v in range(net.node_count) if reached[v])
    return FlowResult(value=value, flows=flows, source_side=source_side)
