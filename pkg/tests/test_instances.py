"""Tests for the seeded generators and the coloring reduction."""

import networkx as nx
import pytest

from core.dag import ShapeTag, classify_shape, is_out_forest, width_and_chain_partition
from core.exceptions import (
    AgentCountError,
    ImproperColoringError,
    InstanceFormatError,
    InvalidInstanceError,
)
from core.preferences import (
    Instance,
    dissatisfaction_profile,
    max_dissatisfaction,
    verify_decision,
)
from instances.fdag import format_instance, read_edge_list
from instances.generators import (
    gen_directed_matching,
    gen_modular,
    gen_out_forest,
    gen_out_stars,
    gen_random_dag,
    gen_three_paths,
    gen_width_two,
)
from instances.reductions import check_coloring, coloring_to_allocation, reduce_coloring
from solvers.modules import modular_partition
from solvers.oracle import brute_force_decision, brute_force_optimum

PROPER_COLORINGS = {
    "k3.edges": {0: 0, 1: 1, 2: 2},
    "p3.edges": {0: 0, 1: 1, 2: 0},
    "c4.edges": {0: 0, 1: 1, 2: 0, 3: 1},
    "c5.edges": {0: 0, 1: 1, 2: 0, 3: 1, 4: 2},
    "edge.edges": {0: 0, 1: 1},
}


class TestGenerators:
    """Test determinism and the shape of each family."""

    def test_same_seed_same_instance(self):
        first = format_instance(Instance(gen_random_dag(12, 0.3, seed=5), 2))
        second = format_instance(Instance(gen_random_dag(12, 0.3, seed=5), 2))
        assert first == second

    def test_seeded_families_are_deterministic(self):
        for make in (
            lambda: gen_width_two(9, seed=4),
            lambda: gen_out_forest(9, seed=4),
            lambda: gen_modular(3, seed=4),
        ):
            assert make().arcs == make().arcs

    def test_probability_checked(self):
        with pytest.raises(InvalidInstanceError):
            gen_random_dag(4, 1.5, seed=0)

    def test_width_two_needs_two_items(self):
        with pytest.raises(InvalidInstanceError):
            gen_width_two(1, seed=0)

    def test_star_needs_leaves(self):
        with pytest.raises(InvalidInstanceError):
            gen_out_stars([2, 0])

    def test_stars_numbering(self):
        g = gen_out_stars([2, 1], singleton_count=1)
        assert g.n == 6
        assert sorted(g.arcs) == [(0, 1), (0, 2), (3, 4)]

    def test_directed_matching(self):
        g = gen_directed_matching(3)
        assert sorted(g.arcs) == [(0, 1), (2, 3), (4, 5)]
        assert ShapeTag.DIRECTED_MATCHING in classify_shape(g)

    def test_modular_needs_modules(self):
        with pytest.raises(InvalidInstanceError):
            gen_modular(0, seed=0)

    @pytest.mark.parametrize("seed", range(10))
    def test_shapes(self, seed):
        assert width_and_chain_partition(gen_width_two(12, seed=seed)).width <= 2
        assert is_out_forest(gen_out_forest(12, seed=seed))
        assert modular_partition(gen_modular(4, seed=seed)).d <= 4


class TestThreePaths:
    """Test the three-path family and its balanced witness."""

    def test_agent_count_checked(self):
        with pytest.raises(AgentCountError):
            gen_three_paths(0)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_witness_attains_expected_value(self, k):
        family = gen_three_paths(k)
        profile = dissatisfaction_profile(family.instance, family.witness)
        assert max_dissatisfaction(profile) == family.expected_optimum == -(-3 * (k - 1) // 2)
        for bundle in family.witness.assigned:
            assert sorted(v // k for v in bundle) == [0, 1, 2]

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_expected_value_is_optimal(self, k):
        family = gen_three_paths(k)
        assert brute_force_optimum(family.instance).optimum == family.expected_optimum


class TestColoringReduction:
    """Test the k-copy instance built from an undirected graph."""

    def test_triangle_sizes(self):
        red = reduce_coloring(nx.complete_graph(3), 3)
        assert red.instance.n == 18
        assert red.diss == 6
        assert red.instance.threshold == 6

    def test_single_edge_sizes(self):
        red = reduce_coloring(nx.path_graph(2), 3)
        assert red.instance.n == 9
        assert red.diss == 4

    def test_shape(self):
        """Arcs only run from original to edge vertices; edge vertices have in-degree two."""
        red = reduce_coloring(nx.cycle_graph(5), 3)
        g = red.instance.graph
        originals = {v for copy in red.original_copies for v in copy}
        for u, v in g.arcs:
            assert u in originals and v not in originals
        assert all(g.in_degree(w) == 2 for copy in red.edge_copies for w in copy)

    def test_needs_three_agents(self):
        with pytest.raises(AgentCountError):
            reduce_coloring(nx.path_graph(2), 2)

    def test_self_loop_rejected(self):
        h = nx.Graph([(0, 0), (0, 1)])
        with pytest.raises(InstanceFormatError):
            reduce_coloring(h, 3)

    @pytest.mark.parametrize("name", sorted(PROPER_COLORINGS))
    def test_proper_coloring_meets_threshold(self, fixtures_dir, name):
        red = reduce_coloring(read_edge_list(fixtures_dir / name), 3)
        allocation = coloring_to_allocation(red, PROPER_COLORINGS[name])
        feasible, profile = verify_decision(red.instance, allocation)
        assert feasible
        assert set(profile) == {red.diss}

    def test_missing_vertex(self, fixtures_dir):
        red = reduce_coloring(read_edge_list(fixtures_dir / "k3.edges"), 3)
        with pytest.raises(ImproperColoringError):
            check_coloring(red, {0: 0, 1: 1})

    def test_monochromatic_edge(self, fixtures_dir):
        red = reduce_coloring(read_edge_list(fixtures_dir / "k3.edges"), 3)
        with pytest.raises(ImproperColoringError):
            coloring_to_allocation(red, {0: 0, 1: 1, 2: 1})

    def test_color_out_of_range(self, fixtures_dir):
        red = reduce_coloring(read_edge_list(fixtures_dir / "p3.edges"), 3)
        with pytest.raises(ImproperColoringError):
            check_coloring(red, {0: 0, 1: 3, 2: 0})

    def test_threshold_is_tight_on_an_edge(self):
        red = reduce_coloring(nx.path_graph(2), 3)
        assert brute_force_decision(red.instance)[0]
        assert not brute_force_decision(red.instance.with_threshold(red.diss - 1))[0]
