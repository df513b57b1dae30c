"""Tests for the exhaustive reference search."""

import pytest

from core.exceptions import BudgetExceededError, MissingThresholdError
from core.preferences import Instance, SolverName, dissatisfaction_profile, max_dissatisfaction
from instances.generators import gen_random_dag
from solvers.oracle import brute_force_decision, brute_force_optimum, sources_lower_bound

from .helpers import naive_optimum


class TestBruteForceOptimum:
    """Test the optimum search against plain enumeration."""

    def test_chain_two_agents(self, chain3):
        result = brute_force_optimum(Instance(chain3, 2))
        assert result.optimum == 1
        assert result.solver == SolverName.ORACLE

    def test_edgeless(self, edgeless4):
        """Four isolated items for two agents: each misses the other's two."""
        assert brute_force_optimum(Instance(edgeless4, 2)).optimum == 2

    def test_more_agents_than_items(self, chain3):
        result = brute_force_optimum(Instance(chain3, 4))
        assert result.optimum == 3

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_enumeration(self, seed):
        """Optimum equals the minimum over every item-to-agent map."""
        n = 4 + seed % 4
        k = 1 + seed % 3
        inst = Instance(gen_random_dag(n, 0.3, seed=seed), k)
        result = brute_force_optimum(inst)

        assert result.optimum == naive_optimum(inst)
        profile = dissatisfaction_profile(inst, result.allocation)
        assert max_dissatisfaction(profile) == result.optimum

    @pytest.mark.parametrize("seed", range(30))
    def test_level_kernel_preserves_optimum(self, seed):
        """Branching only on the top k levels never changes the optimum."""
        inst = Instance(gen_random_dag(9, 0.35, seed=100 + seed), 2 + seed % 3)
        with_kernel = brute_force_optimum(inst, level_kernel=True)
        without_kernel = brute_force_optimum(inst, level_kernel=False)
        assert with_kernel.optimum == without_kernel.optimum

    @pytest.mark.parametrize("seed", range(30))
    def test_more_agents_never_lower_the_optimum(self, seed):
        n = 3 + seed % 5
        g = gen_random_dag(n, 0.15 + 0.1 * (seed % 4), seed=400 + seed)
        optima = [brute_force_optimum(Instance(g, k)).optimum for k in range(1, n + 2)]
        assert optima == sorted(optima)
        assert optima[0] == 0
        assert optima[-1] == n

    def test_budget_exceeded(self, chain3):
        with pytest.raises(BudgetExceededError):
            brute_force_optimum(Instance(chain3, 2), budget=1)


class TestBruteForceDecision:
    """Test the threshold search."""

    def test_feasible_with_witness(self, bipartite_gadget):
        inst = Instance(bipartite_gadget, 2, threshold=1)
        feasible, witness = brute_force_decision(inst)
        assert feasible
        assert max_dissatisfaction(dissatisfaction_profile(inst, witness)) <= 1

    def test_infeasible(self, bipartite_gadget):
        feasible, witness = brute_force_decision(Instance(bipartite_gadget, 2, threshold=0))
        assert not feasible
        assert witness is None

    def test_missing_threshold(self, bipartite_gadget):
        with pytest.raises(MissingThresholdError):
            brute_force_decision(Instance(bipartite_gadget, 2))

    def test_more_agents_than_items(self, chain3):
        assert brute_force_decision(Instance(chain3, 5, threshold=3))[0]
        assert not brute_force_decision(Instance(chain3, 5, threshold=2))[0]


class TestSourcesLowerBound:
    """Test the bound used to stop the search early."""

    def test_values(self, edgeless4, diamond):
        assert sources_lower_bound(Instance(edgeless4, 2)) == 2
        assert sources_lower_bound(Instance(edgeless4, 3)) == 3
        assert sources_lower_bound(Instance(diamond, 2)) == 1

    @pytest.mark.parametrize("seed", range(15))
    def test_never_exceeds_optimum(self, seed):
        inst = Instance(gen_random_dag(8, 0.2, seed=seed), 1 + seed % 4)
        assert sources_lower_bound(inst) <= brute_force_optimum(inst).optimum
