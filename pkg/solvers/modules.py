# solvers/modules.py

"""Partitions into path modules and independent-set modules.

A module is a vertex set whose members agree on every neighbour outside the
set. Independent-set modules with two or more vertices are exactly the
subsets of twin classes (identical in- and out-neighbourhoods). A path
module with three or more vertices is the smallest module containing any of
its arcs. Two-vertex path modules chain up along directed paths and are
paired from the top.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from core.dag import Bitset, PreferenceGraph, iter_bits, mask_of
from core.logging import get_logger

logger = get_logger(__name__)


class ModuleKind(str, Enum):
    PATH = "path"
    INDEPENDENT_SET = "independent_set"


@dataclass(frozen=True)
class Module:
    """Module vertices; path modules list their vertices top to bottom."""

    vertices: tuple[int, ...]
    kind: ModuleKind

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def mask(self) -> Bitset:
        return mask_of(self.vertices)


@dataclass(frozen=True)
class ModularPartition:
    modules: tuple[Module, ...]

    @property
    def d(self) -> int:
        return len(self.modules)

    def path_modules(self) -> list[Module]:
        return [m for m in self.modules if m.kind == ModuleKind.PATH]

    def is_modules(self) -> list[Module]:
        return [m for m in self.modules if m.kind == ModuleKind.INDEPENDENT_SET]

    def all_independent(self) -> bool:
        """No path module has two or more vertices."""
        return all(m.kind == ModuleKind.INDEPENDENT_SET or m.size == 1 for m in self.modules)


def _neighbour_masks(g: PreferenceGraph) -> tuple[list[Bitset], list[Bitset]]:
    out_masks = [mask_of(g.out_adj[v]) for v in range(g.n)]
    in_masks = [mask_of(g.in_adj[v]) for v in range(g.n)]
    return out_masks, in_masks


def _splits(mask: Bitset, z: int, out_masks: list[Bitset], in_masks: list[Bitset]) -> bool:
    """True if ``z`` treats members of ``mask`` differently."""
    return (out_masks[z] & mask) not in (0, mask) or (in_masks[z] & mask) not in (0, mask)


def is_module(g: PreferenceGraph, vertices: Iterable[int]) -> bool:
    mask = mask_of(vertices)
    out_masks, in_masks = _neighbour_masks(g)
    return not any(
        _splits(mask, z, out_masks, in_masks) for z in range(g.n) if not (mask >> z) & 1
    )


def module_closure(g: PreferenceGraph, seed: Iterable[int]) -> Bitset:
    """Smallest module containing ``seed``."""
    out_masks, in_masks = _neighbour_masks(g)
    mask = mask_of(seed)
    grown = True
    while grown:
        grown = False
        for z in range(g.n):
            if not (mask >> z) & 1 and _splits(mask, z, out_masks, in_masks):
                mask |= 1 << z
                grown = True
    return mask


def induced_path(g: PreferenceGraph, mask: Bitset) -> Optional[tuple[int, ...]]:
    """The vertices of ``mask`` top to bottom if they induce a directed path."""
    members = list(iter_bits(mask))
    inside = [(u, v) for u in members for v in g.out_adj[u] if (mask >> v) & 1]
    if len(inside) != len(members) - 1:
        return None
    successor = dict(inside)
    if len(successor) != len(inside) or len(set(successor.values())) != len(inside):
        return None
    heads = [v for v in members if v not in set(successor.values())]
    if len(heads) != 1:
        return None
    path = [heads[0]]
    while path[-1] in successor:
        path.append(successor[path[-1]])
    return tuple(path) if len(path) == len(members) else None


def twin_classes(g: PreferenceGraph) -> list[frozenset[int]]:
    """Minimum partition of V into independent-set modules."""
    groups: dict[tuple[tuple[int, ...], tuple[int, ...]], list[int]] = {}
    for v in range(g.n):
        groups.setdefault((g.in_adj[v], g.out_adj[v]), []).append(v)
    return sorted((frozenset(members) for members in groups.values()), key=min)


def modular_partition(g: PreferenceGraph) -> ModularPartition:
    """A minimum partition of V into path modules and independent-set modules.

    The partition is unique up to the pairing of two-vertex path modules
    inside a run such as a transitive tournament; runs are paired from the
    top.
    """
    modules: list[Module] = []
    used = 0

    for members in twin_classes(g):
        if len(members) >= 2:
            modules.append(Module(tuple(sorted(members)), ModuleKind.INDEPENDENT_SET))
            used |= mask_of(members)

    # Long path modules: closures of arcs that induce a path.
    long_paths: dict[Bitset, tuple[int, ...]] = {}
    pair_partner: dict[int, int] = {}
    for u, v in sorted(g.arcs):
        if (used >> u) & 1 or (used >> v) & 1:
            continue
        closure = module_closure(g, (u, v))
        if closure.bit_count() == 2:
            pair_partner[u] = v
        elif closure not in long_paths:
            path = induced_path(g, closure)
            if path is not None:
                long_paths[closure] = path

    for closure, path in sorted(long_paths.items(), key=lambda item: (-len(item[1]), item[1])):
        if closure & used:
            continue
        modules.append(Module(path, ModuleKind.PATH))
        used |= closure

    # Two-vertex modules form vertex-disjoint runs; pair each run from the top.
    run_heads = [
        u
        for u in pair_partner
        if not (used >> u) & 1 and u not in set(pair_partner.values())
    ]
    for head in sorted(run_heads, key=lambda v: g.topo.index(v)):
        u = head
        while u in pair_partner:
            v = pair_partner[u]
            if (used >> u) & 1 or (used >> v) & 1:
                break
            modules.append(Module((u, v), ModuleKind.PATH))
            used |= (1 << u) | (1 << v)
            u = pair_partner.get(v, -1)

    for v in range(g.n):
        if not (used >> v) & 1:
            modules.append(Module((v,), ModuleKind.PATH))

    modules.sort(key=lambda m: min(m.vertices))
    logger.debug(
        "modules.partitioned",
        n=g.n,
        d=len(modules),
        path_modules=sum(1 for m in modules if m.kind == ModuleKind.PATH and m.size > 1),
        is_modules=sum(1 for m in modules if m.kind == ModuleKind.INDEPENDENT_SET),
    )
    return ModularPartition(tuple(modules))
