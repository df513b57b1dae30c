"""Tests for modular partitions and the two module-based solvers."""

import itertools

import pytest

from core.dag import build_dag, is_antichain, mask_of
from core.exceptions import (
    AgentCountError,
    BudgetExceededError,
    NotAllIsModulesError,
    NotAPartitionError,
)
from core.preferences import Instance, SolverName
from instances.generators import gen_is_modules, gen_modular, gen_random_dag
from solvers.is_modules import assignable_sets, compositions, solve_is_modules
from solvers.modular_fpt import count_guesses, solve_modular_fpt
from solvers.modules import (
    ModuleKind,
    induced_path,
    is_module,
    modular_partition,
    module_closure,
    twin_classes,
)
from solvers.oracle import brute_force_optimum

# three disjoint diamonds 4i -> {4i+1, 4i+2} -> 4i+3
DIAMONDS_ARCS = [
    arc
    for base in (0, 4, 8)
    for arc in [(base, base + 1), (base, base + 2), (base + 1, base + 3), (base + 2, base + 3)]
]


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        yield [[first], *partition]
        for i in range(len(partition)):
            yield partition[:i] + [[first, *partition[i]]] + partition[i + 1 :]


def minimum_module_count(g) -> int:
    """Smallest partition into modules that are antichains or induced paths."""
    best = g.n
    for partition in set_partitions(list(range(g.n))):
        if len(partition) >= best:
            continue
        if all(
            is_module(g, block)
            and (is_antichain(g, block) or induced_path(g, mask_of(block)) is not None)
            for block in partition
        ):
            best = len(partition)
    return best


def bounded_agents(n: int, seed: int) -> int:
    """Agent count for oracle comparisons that keeps the search small."""
    k = 1 + seed % 5
    if n > 9:
        k = min(k, 3)
    return min(k, n)


class TestModularPartition:
    """Test module checks and the minimum partition."""

    def test_gadget_has_two_independent_modules(self, bipartite_gadget):
        mp = modular_partition(bipartite_gadget)
        assert mp.d == 2
        assert [m.vertices for m in mp.is_modules()] == [(0, 1), (2, 3)]
        assert mp.all_independent()

    def test_chain_is_one_path_module(self, chain3):
        mp = modular_partition(chain3)
        assert mp.d == 1
        assert mp.modules[0].kind == ModuleKind.PATH
        assert mp.modules[0].vertices == (0, 1, 2)
        assert not mp.all_independent()

    def test_star(self, out_star):
        mp = modular_partition(out_star)
        assert [(m.vertices, m.kind) for m in mp.modules] == [
            ((0,), ModuleKind.PATH),
            ((1, 2), ModuleKind.INDEPENDENT_SET),
        ]

    def test_transitive_tournament_pairs_from_top(self):
        """Every pair of consecutive vertices is a module; pairs start at the top."""
        g = build_dag(3, [(0, 1), (0, 2), (1, 2)])
        mp = modular_partition(g)
        assert mp.d == 2
        assert [m.vertices for m in mp.modules] == [(0, 1), (2,)]

    def test_module_closure(self, chain3, diamond):
        assert module_closure(chain3, (0, 1)) == 0b111
        assert module_closure(diamond, (1, 2)) == 0b0110

    def test_twin_classes(self, diamond, edgeless4):
        assert twin_classes(diamond) == [frozenset({0}), frozenset({1, 2}), frozenset({3})]
        assert twin_classes(edgeless4) == [frozenset(range(4))]

    @pytest.mark.parametrize("seed", range(20))
    def test_modules_are_modules(self, seed):
        g = gen_random_dag(9, 0.3, seed=seed)
        mp = modular_partition(g)
        assert sorted(v for m in mp.modules for v in m.vertices) == list(range(g.n))
        for module in mp.modules:
            assert is_module(g, module.vertices)
            if module.kind == ModuleKind.INDEPENDENT_SET:
                assert is_antichain(g, module.vertices)
            else:
                assert induced_path(g, module.mask) == module.vertices

    @pytest.mark.parametrize("seed", range(20))
    def test_partition_is_minimum(self, seed):
        g = gen_random_dag(6, 0.2 + 0.05 * (seed % 5), seed=200 + seed)
        assert modular_partition(g).d == minimum_module_count(g)

    @pytest.mark.parametrize("seed", range(10))
    def test_generated_module_count_is_an_upper_bound(self, seed):
        g = gen_modular(4, seed=seed)
        assert modular_partition(g).d <= 4


class TestModularFPT:
    """Test the guess-and-flow solver."""

    def test_edgeless(self, edgeless4):
        result = solve_modular_fpt(Instance(edgeless4, 2))
        assert result.optimum == 2
        assert result.solver == SolverName.MODULAR_FPT

    def test_gadget(self, bipartite_gadget):
        assert solve_modular_fpt(Instance(bipartite_gadget, 2)).optimum == 1

    def test_chain(self, chain3):
        assert solve_modular_fpt(Instance(chain3, 2)).optimum == 1

    def test_budget(self, chain3):
        with pytest.raises(BudgetExceededError):
            solve_modular_fpt(Instance(chain3, 2), guess_budget=0)

    def test_guess_count_fixes_first_module(self, bipartite_gadget):
        """First IS module: one option per size; second: every nonempty agent subset."""
        mp = modular_partition(bipartite_gadget)
        assert count_guesses(mp, 2) == 2 * 3

    @pytest.mark.parametrize("seed", range(200))
    def test_matches_oracle(self, seed):
        g = gen_modular(1 + seed % 3, seed=seed, max_module_size=3)
        mp = modular_partition(g)
        assert mp.d <= 3
        assert all(is_module(g, module.vertices) for module in mp.modules)

        inst = Instance(g, min(1 + seed % 3, g.n))
        assert solve_modular_fpt(inst, mp).optimum == brute_force_optimum(inst).optimum


class TestIsModules:
    """Test assignable sets and the independent-set module solver."""

    def test_edgeless_family(self, edgeless4):
        family = assignable_sets(edgeless4, [range(4)])
        assert len(family.sets) == 1
        assert family.sets[0].undominated == 0
        assert family.sets[0].union_size == 4

    def test_gadget_family(self, bipartite_gadget):
        family = assignable_sets(bipartite_gadget, [{0, 1}, {2, 3}])
        assert [(s.members, s.undominated) for s in family.sets] == [((0,), 0), ((1,), 2)]

    def test_overlapping_modules(self, bipartite_gadget):
        with pytest.raises(NotAPartitionError):
            assignable_sets(bipartite_gadget, [{0, 1}, {1, 2, 3}])

    def test_missing_vertex(self, bipartite_gadget):
        with pytest.raises(NotAPartitionError):
            assignable_sets(bipartite_gadget, [{0, 1}, {2}])

    def test_not_independent(self, chain3):
        with pytest.raises(NotAllIsModulesError):
            assignable_sets(chain3, [{0, 1}, {2}])

    def test_family_budget(self):
        """Three disjoint diamonds have 4**3 - 1 antichain module sets."""
        g = build_dag(12, DIAMONDS_ARCS)
        assert len(assignable_sets(g, twin_classes(g), budget=63).sets) == 63
        with pytest.raises(BudgetExceededError):
            assignable_sets(g, twin_classes(g), budget=62)

    @pytest.mark.parametrize("seed", range(30))
    def test_family_is_every_antichain_union(self, seed):
        g = gen_random_dag(8, 0.25, seed=300 + seed)
        classes = twin_classes(g)
        expected = [
            members
            for size in range(1, len(classes) + 1)
            for members in itertools.combinations(range(len(classes)), size)
            if is_antichain(g, frozenset().union(*(classes[i] for i in members)))
        ]
        assert [s.members for s in assignable_sets(g, classes).sets] == expected

    def test_compositions(self):
        assert list(compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]
        assert list(compositions(3, 3)) == [(1, 1, 1)]
        assert list(compositions(2, 3)) == []

    def test_gadget(self, bipartite_gadget):
        result = solve_is_modules(Instance(bipartite_gadget, 2))
        assert result.optimum == 1
        assert result.solver == SolverName.IS_MODULES

    def test_too_many_agents(self, chain3):
        with pytest.raises(AgentCountError):
            solve_is_modules(Instance(chain3, 4))

    def test_budget(self, edgeless4):
        with pytest.raises(BudgetExceededError):
            solve_is_modules(Instance(edgeless4, 2), guess_budget=0)

    @pytest.mark.parametrize("seed", range(200))
    def test_matches_oracle(self, seed):
        g = gen_is_modules(1 + seed % 3, seed=seed, max_module_size=2 + seed % 2)
        inst = Instance(g, bounded_agents(g.n, seed))
        assert solve_is_modules(inst).optimum == brute_force_optimum(inst).optimum
