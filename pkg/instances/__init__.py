"""Instance generators, the coloring reduction and the text file formats."""

from .fdag import (
    format_allocation,
    format_instance,
    format_result,
    parse_allocation,
    parse_instance,
    read_allocation,
    read_edge_list,
    read_instance,
    write_instance,
)
from .generators import (
    ThreePaths,
    gen_directed_matching,
    gen_is_modules,
    gen_modular,
    gen_out_forest,
    gen_out_stars,
    gen_random_dag,
    gen_three_paths,
    gen_width_two,
    three_paths_allocation,
)
from .reductions import ColoringReduction, check_coloring, coloring_to_allocation, reduce_coloring

__all__ = [
    # Generators
    "ThreePaths",
    "gen_directed_matching",
    "gen_is_modules",
    "gen_modular",
    "gen_out_forest",
    "gen_out_stars",
    "gen_random_dag",
    "gen_three_paths",
    "gen_width_two",
    "three_paths_allocation",
    # Coloring reduction
    "ColoringReduction",
    "check_coloring",
    "coloring_to_allocation",
    "reduce_coloring",
    # File formats
    "format_allocation",
    "format_instance",
    "format_result",
    "parse_allocation",
    "parse_instance",
    "read_allocation",
    "read_edge_list",
    "read_instance",
    "write_instance",
]
