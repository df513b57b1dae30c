# instances/generators.py

"""Seeded generators for the graph families the solvers specialise in.

Every generator draws from ``numpy.random.default_rng(seed)`` only, so the
same arguments always produce the same graph.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from core.dag import PreferenceGraph, build_dag, width_and_chain_partition
from core.exceptions import AgentCountError, InvalidInstanceError
from core.logging import get_logger
from core.preferences import Allocation, Instance

logger = get_logger(__name__)


def _check_probability(name: str, p: float):
    if not 0.0 <= p <= 1.0:
        raise InvalidInstanceError(f"{name} must lie in [0, 1], got {p}")


def gen_random_dag(n: int, arc_probability: float, seed: int) -> PreferenceGraph:
    """Shuffle a topological order and keep each forward pair with ``arc_probability``."""
    _check_probability("arc_probability", arc_probability)
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    keep = np.triu(rng.random((n, n)) < arc_probability, k=1)
    arcs = [(int(order[i]), int(order[j])) for i, j in zip(*np.nonzero(keep))]
    logger.debug("generators.random_dag", n=n, arcs=len(arcs), seed=seed)
    return build_dag(n, arcs)


def gen_out_stars(leaf_counts: Sequence[int], singleton_count: int = 0) -> PreferenceGraph:
    """Stars numbered root first then leaves, followed by the isolated vertices."""
    if any(count < 1 for count in leaf_counts):
        raise InvalidInstanceError(f"Every star needs at least one leaf, got {list(leaf_counts)}")
    if singleton_count < 0:
        raise InvalidInstanceError(f"Singleton count must be nonnegative, got {singleton_count}")
    arcs = []
    next_vertex = 0
    for count in leaf_counts:
        root = next_vertex
        arcs.extend((root, root + offset) for offset in range(1, count + 1))
        next_vertex += count + 1
    return build_dag(next_vertex + singleton_count, arcs)


def gen_directed_matching(edge_count: int) -> PreferenceGraph:
    if edge_count < 0:
        raise InvalidInstanceError(f"Edge count must be nonnegative, got {edge_count}")
    return build_dag(2 * edge_count, [(2 * i, 2 * i + 1) for i in range(edge_count)])


@dataclass(frozen=True)
class ThreePaths:
    """Three disjoint k-vertex paths with the balanced witness allocation."""

    instance: Instance
    expected_optimum: int
    witness: Allocation


def three_paths_allocation(k: int) -> Allocation:
    """Give every agent one vertex per path with balanced position sums.

    Position ``p`` (1 is the top) of path ``P`` is vertex ``P * k + p - 1``.
    An agent holding positions p_A, p_B, p_C misses p_A + p_B + p_C - 3 items.
    """
    if k < 1:
        raise AgentCountError(f"Three-path construction needs k >= 1, got {k}")
    m = k // 2
    bundles = []
    for i in range(1, k + 1):
        if k % 2:
            p_b = (i - 1 + m) % k + 1
            p_c = 3 * (m + 1) - i - p_b
        elif i <= m:
            p_b, p_c = i + m, 2 * m + 2 - 2 * i
        else:
            p_b, p_c = i - m, 4 * m + 1 - 2 * i
        bundles.append(frozenset({i - 1, k + p_b - 1, 2 * k + p_c - 1}))
    return Allocation(tuple(bundles))


def gen_three_paths(k: int) -> ThreePaths:
    """Three directed paths of ``k`` vertices for ``k`` agents."""
    if k < 1:
        raise AgentCountError(f"Three-path construction needs k >= 1, got {k}")
    arcs = [(p * k + i, p * k + i + 1) for p in range(3) for i in range(k - 1)]
    instance = Instance(build_dag(3 * k, arcs), k)
    return ThreePaths(
        instance=instance,
        expected_optimum=-(-3 * (k - 1) // 2),
        witness=three_paths_allocation(k),
    )


def gen_width_two(n: int, seed: int, cross_probability: float = 0.25) -> PreferenceGraph:
    """Two interleaved chains with random forward arcs between them.

    Vertices are numbered along a merged topological order, so cross arcs
    always point forward and the two chains still cover every vertex.
    """
    if n < 2:
        raise InvalidInstanceError(f"Width-two generator needs n >= 2, got {n}")
    _check_probability("cross_probability", cross_probability)
    rng = np.random.default_rng(seed)
    chain_of = rng.permutation([0] * ((n + 1) // 2) + [1] * (n // 2))

    arcs = []
    last = [-1, -1]
    for v, chain in enumerate(chain_of):
        if last[chain] >= 0:
            arcs.append((last[chain], v))
        last[chain] = v
    cross = rng.random((n, n)) < cross_probability
    for u in range(n):
        for v in range(u + 1, n):
            if chain_of[u] != chain_of[v] and cross[u, v]:
                arcs.append((u, v))

    g = build_dag(n, arcs)
    width = width_and_chain_partition(g).width
    if width > 2:
        raise AssertionError(f"Two chains produced a graph of width {width}")
    logger.debug("generators.width_two", n=n, arcs=len(arcs), width=width, seed=seed)
    return g


def gen_out_forest(n: int, seed: int, root_probability: float = 0.3) -> PreferenceGraph:
    """Each vertex opens a new tree or hangs under a uniformly chosen earlier vertex."""
    _check_probability("root_probability", root_probability)
    rng = np.random.default_rng(seed)
    arcs = []
    for v in range(1, n):
        if rng.random() >= root_probability:
            arcs.append((int(rng.integers(0, v)), v))
    return build_dag(n, arcs)


def _expand_quotient(
    sizes: Sequence[int], is_path: Sequence[bool], quotient_arcs: Sequence[tuple[int, int]]
) -> PreferenceGraph:
    starts = np.concatenate(([0], np.cumsum(sizes))).astype(int)
    members = [range(starts[i], starts[i + 1]) for i in range(len(sizes))]
    arcs = []
    for i, path in enumerate(is_path):
        if path:
            arcs.extend((v, v + 1) for v in members[i][:-1])
    for i, j in quotient_arcs:
        arcs.extend((u, v) for u in members[i] for v in members[j])
    return build_dag(int(starts[-1]), arcs)


def gen_modular(
    module_count: int,
    seed: int,
    max_module_size: int = 3,
    arc_probability: float = 0.5,
    path_probability: float = 0.5,
) -> PreferenceGraph:
    """Blow up a random DAG on ``module_count`` nodes into path and IS modules.

    Arcs between two modules are complete, so the result has at most
    ``module_count`` modules in its minimum partition.
    """
    if module_count < 1 or max_module_size < 1:
        raise InvalidInstanceError("Module count and module size must be positive")
    _check_probability("arc_probability", arc_probability)
    _check_probability("path_probability", path_probability)
    rng = np.random.default_rng(seed)
    sizes = [int(s) for s in rng.integers(1, max_module_size + 1, size=module_count)]
    is_path = [bool(x) for x in rng.random(module_count) < path_probability]
    keep = np.triu(rng.random((module_count, module_count)) < arc_probability, k=1)
    quotient_arcs = [(int(i), int(j)) for i, j in zip(*np.nonzero(keep))]
    logger.debug(
        "generators.modular", modules=module_count, sizes=sizes, quotient_arcs=len(quotient_arcs)
    )
    return _expand_quotient(sizes, is_path, quotient_arcs)


def gen_is_modules(
    module_count: int, seed: int, max_module_size: int = 3, arc_probability: float = 0.5
) -> PreferenceGraph:
    """As :func:`gen_modular` with independent-set modules only."""
    return gen_modular(
        module_count,
        seed,
        max_module_size=max_module_size,
        arc_probability=arc_probability,
        path_probability=0.0,
    )
