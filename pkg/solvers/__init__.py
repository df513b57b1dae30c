"""Exact solvers for min-max dissatisfaction and the dispatcher choosing among them."""

from .dispatch import Budgets, DispatchReport, dispatch_solve, solve_single_agent
from .is_modules import AssignableFamily, AssignableSet, assignable_sets, solve_is_modules
from .modular_fpt import GuessState, count_guesses, solve_modular_fpt
from .modules import (
    ModularPartition,
    Module,
    ModuleKind,
    is_module,
    modular_partition,
    twin_classes,
)
from .oracle import brute_force_decision, brute_force_optimum, sources_lower_bound
from .out_forest import ProfileDP, solve_out_forest
from .out_stars import StarProfile, solve_out_stars, star_profile
from .two_agents import solve_two_agents
from .width_two import AuxiliaryMatchingGraph, build_auxiliary_graph, solve_width_two

__all__ = [
    # Dispatch
    "Budgets",
    "DispatchReport",
    "dispatch_solve",
    "solve_single_agent",
    # Exact oracle
    "brute_force_decision",
    "brute_force_optimum",
    "sources_lower_bound",
    # Structured graphs
    "solve_two_agents",
    "AuxiliaryMatchingGraph",
    "build_auxiliary_graph",
    "solve_width_two",
    "StarProfile",
    "star_profile",
    "solve_out_stars",
    "ProfileDP",
    "solve_out_forest",
    # Modules
    "ModuleKind",
    "Module",
    "ModularPartition",
    "is_module",
    "modular_partition",
    "twin_classes",
    "GuessState",
    "count_guesses",
    "solve_modular_fpt",
    "AssignableSet",
    "AssignableFamily",
    "assignable_sets",
    "solve_is_modules",
]
