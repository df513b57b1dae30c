#!/usr/bin/env python3
"""
fairdag command line

Solve, verify, classify and generate min-max dissatisfaction instances on a
shared preference DAG.
"""

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from pydantic import BaseModel

from core.config import config
from core.dag import classify_shape, width_and_chain_partition
from core.exceptions import FairdagException, GraphException, InstanceException
from core.logging import configure_logging, get_logger
from core.preferences import Instance, verify_decision
from instances.fdag import (
    format_instance,
    format_result,
    read_allocation,
    read_edge_list,
    read_instance,
)
from instances.generators import (
    gen_directed_matching,
    gen_is_modules,
    gen_modular,
    gen_out_forest,
    gen_out_stars,
    gen_random_dag,
    gen_three_paths,
    gen_width_two,
)
from instances.reductions import reduce_coloring
from solvers.dispatch import Budgets, dispatch_solve
from solvers.modules import modular_partition, twin_classes

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_ERROR = 3

GENERATOR_FAMILIES = (
    "random",
    "stars",
    "matching",
    "three-paths",
    "width-two",
    "forest",
    "modular",
    "is-modules",
)


# Report Models
class SolveReportModel(BaseModel):
    """Result of ``solve``."""

    optimum: int
    solver: str
    items: list[list[int]]
    dissatisfaction: list[int]
    note: Optional[str] = None
    threshold: Optional[int] = None
    feasible: Optional[bool] = None
    tags: list[str] = []
    width: Optional[int] = None
    fallbacks: list[str] = []


class VerifyReportModel(BaseModel):
    """Result of ``verify``."""

    feasible: bool
    threshold: int
    max_dissatisfaction: int
    dissatisfaction: list[int]


class ModuleModel(BaseModel):
    kind: str
    vertices: list[int]


class ClassifyReportModel(BaseModel):
    """Result of ``classify``."""

    n: int
    k: int
    arcs: int
    tags: list[str]
    width: int
    chains: list[list[int]]
    modules: list[ModuleModel]
    twin_classes: int


def exit_code_for(error: Exception) -> int:
    """Input and graph problems exit 2; every solver failure exits 3."""
    if isinstance(error, (InstanceException, GraphException, OSError)):
        return EXIT_INPUT_ERROR
    return EXIT_BUDGET_ERROR


def error_code_for(error: Exception) -> str:
    if isinstance(error, FairdagException):
        return error.code
    return "io_error"


def leaf_counts(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def budgets_from_args(args: argparse.Namespace) -> Budgets:
    overrides = {
        name: getattr(args, name)
        for name in ("oracle_budget", "guess_budget", "dp_k_cap")
        if getattr(args, name) is not None
    }
    return Budgets(**overrides)


def _emit(args: argparse.Namespace, model: BaseModel, text: str):
    if args.json:
        print(model.model_dump_json(indent=2))
    else:
        sys.stdout.write(text)


def cmd_solve(args: argparse.Namespace) -> int:
    inst = read_instance(args.input)
    result, report = dispatch_solve(inst, budgets_from_args(args))
    feasible = None if inst.threshold is None else result.optimum <= inst.threshold

    extra: dict[str, object] = {}
    if inst.threshold is not None:
        extra = {"threshold": inst.threshold, "feasible": str(feasible).lower()}
    model = SolveReportModel(
        optimum=result.optimum,
        solver=result.solver.value,
        items=result.allocation.as_lists(),
        dissatisfaction=list(result.profile),
        note=result.lower_bound_note,
        threshold=inst.threshold,
        feasible=feasible,
        tags=sorted(tag.value for tag in report.tags),
        width=report.width,
        fallbacks=report.fallbacks,
    )
    _emit(args, model, format_result(result, extra))
    return EXIT_INFEASIBLE if feasible is False else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = read_instance(args.input)
    if args.threshold is not None:
        inst = inst.with_threshold(args.threshold)
    alloc = read_allocation(args.allocation, inst.k)
    feasible, profile = verify_decision(inst, alloc)

    model = VerifyReportModel(
        feasible=feasible,
        threshold=inst.threshold,
        max_dissatisfaction=max(profile, default=0),
        dissatisfaction=list(profile),
    )
    lines = [
        f"feasible: {str(feasible).lower()}",
        f"threshold: {inst.threshold}",
        f"max_dissatisfaction: {model.max_dissatisfaction}",
    ]
    lines += [f"dissatisfaction.{agent}: {value}" for agent, value in enumerate(profile)]
    _emit(args, model, "\n".join(lines) + "\n")
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def cmd_classify(args: argparse.Namespace) -> int:
    inst = read_instance(args.input)
    g = inst.graph
    cert = width_and_chain_partition(g)
    partition = modular_partition(g)
    model = ClassifyReportModel(
        n=g.n,
        k=inst.k,
        arcs=g.arc_count,
        tags=sorted(tag.value for tag in classify_shape(g, cert)),
        width=cert.width,
        chains=[list(chain) for chain in cert.chains],
        modules=[
            ModuleModel(kind=module.kind.value, vertices=list(module.vertices))
            for module in partition.modules
        ],
        twin_classes=len(twin_classes(g)),
    )
    lines = [
        f"n: {model.n}",
        f"k: {model.k}",
        f"arcs: {model.arcs}",
        f"tags: {' '.join(model.tags)}",
        f"width: {model.width}",
    ]
    lines += [f"chain.{i}: {' '.join(map(str, chain))}" for i, chain in enumerate(model.chains)]
    lines.append(f"modules: {partition.d}")
    lines += [
        f"module.{i}: {module.kind} {' '.join(map(str, module.vertices))}"
        for i, module in enumerate(model.modules)
    ]
    lines.append(f"twin_classes: {model.twin_classes}")
    _emit(args, model, "\n".join(lines) + "\n")
    return EXIT_OK


def _write_or_print(text: str, output: Optional[Path]):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)
        logger.info("cli.wrote", path=str(output))


def cmd_gen(args: argparse.Namespace) -> int:
    comments = [f"family {args.family} seed {args.seed}"]
    if args.family == "random":
        g = gen_random_dag(args.n, args.p, args.seed)
    elif args.family == "stars":
        g = gen_out_stars(args.leaves, args.singletons)
    elif args.family == "matching":
        g = gen_directed_matching(args.edges)
    elif args.family == "three-paths":
        built = gen_three_paths(args.k)
        comments.append(f"expected optimum {built.expected_optimum}")
        g = built.instance.graph
    elif args.family == "width-two":
        g = gen_width_two(args.n, args.seed, cross_probability=args.p)
    elif args.family == "forest":
        g = gen_out_forest(args.n, args.seed, root_probability=args.p)
    elif args.family == "modular":
        g = gen_modular(args.modules, args.seed, max_module_size=args.max_module_size)
    else:
        g = gen_is_modules(args.modules, args.seed, max_module_size=args.max_module_size)

    inst = Instance(g, args.k, args.threshold)
    _write_or_print(format_instance(inst, comments), args.output)
    return EXIT_OK


def cmd_reduce_coloring(args: argparse.Namespace) -> int:
    red = reduce_coloring(read_edge_list(args.input), args.k)
    nv, ne = len(red.vertex_order), len(red.edge_order)
    comments = [
        f"coloring reduction of {args.input} with k {red.k}",
        f"vertex t of copy c is c*{nv}+t; edge e of copy c is {red.k * nv}+c*{ne}+e",
        f"vertices in order: {' '.join(map(str, red.vertex_order))}",
    ]
    _write_or_print(format_instance(red.instance, comments), args.output)
    return EXIT_OK


def _bench_one(path: str, budgets: Budgets) -> tuple[str, str, str, float]:
    start = time.perf_counter()
    try:
        result, _ = dispatch_solve(read_instance(Path(path)), budgets)
        outcome = (result.solver.value, str(result.optimum))
    except FairdagException as e:
        outcome = ("-", e.code)
    return Path(path).name, outcome[0], outcome[1], time.perf_counter() - start


def cmd_bench(args: argparse.Namespace) -> int:
    paths = sorted(str(p) for p in Path(args.directory).glob("*.fdag"))
    budgets = budgets_from_args(args)
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_bench_one, paths, [budgets] * len(paths)))
    else:
        rows = [_bench_one(path, budgets) for path in paths]

    print(f"{'instance':<32} {'solver':<14} {'optimum':>8} {'seconds':>9}")
    for name, solver, optimum, seconds in rows:
        print(f"{name:<32} {solver:<14} {optimum:>8} {seconds:>9.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print results as JSON")
    common.add_argument("--oracle-budget", type=int, help="Branch nodes for the exact search")
    common.add_argument("--guess-budget", type=int, help="Guesses for the module solvers")
    common.add_argument("--dp-k-cap", type=int, help="Largest k for the out-forest solver")
    common.add_argument(
        "--log-level",
        default=None,
        help=f"Log level on standard error (default: {config.log_level})",
    )

    parser = argparse.ArgumentParser(
        prog="fairdag",
        description="Min-max dissatisfaction allocation on a shared preference DAG",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s solve --input stars.fdag               # Optimal allocation
  %(prog)s verify --input g.fdag --allocation a.txt --threshold 3
  %(prog)s classify --input g.fdag --json         # Tags, width, modules
  %(prog)s gen stars --leaves 10,1,1,1 --k 2      # Generate an instance
  %(prog)s reduce-coloring --input k3.edges --k 3 --output k3.fdag
  %(prog)s bench --directory tests/fixtures --workers 4

Exit codes: 0 ok, 1 threshold not met, 2 input error, 3 budget exhausted
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="Solve an instance optimally")
    solve.add_argument("--input", type=Path, required=True, help="Instance file (.fdag)")
    solve.set_defaults(handler=cmd_solve)

    verify = sub.add_parser("verify", parents=[common], help="Check an allocation")
    verify.add_argument("--input", type=Path, required=True, help="Instance file (.fdag)")
    verify.add_argument("--allocation", type=Path, required=True, help="Allocation file")
    verify.add_argument("--threshold", type=int, help="Override the instance threshold")
    verify.set_defaults(handler=cmd_verify)

    classify = sub.add_parser("classify", parents=[common], help="Describe the graph structure")
    classify.add_argument("--input", type=Path, required=True, help="Instance file (.fdag)")
    classify.set_defaults(handler=cmd_classify)

    gen = sub.add_parser("gen", parents=[common], help="Generate a seeded instance")
    gen.add_argument("family", choices=GENERATOR_FAMILIES, help="Graph family")
    gen.add_argument("--k", type=int, default=2, help="Agents (default: 2)")
    gen.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    gen.add_argument("--n", type=int, default=10, help="Items for random families (default: 10)")
    gen.add_argument(
        "--p",
        type=float,
        default=0.3,
        help="Arc, cross-arc or new-root probability (default: 0.3)",
    )
    gen.add_argument(
        "--leaves", type=leaf_counts, default="1", help="Comma-separated star leaf counts"
    )
    gen.add_argument("--singletons", type=int, default=0, help="Isolated vertices for stars")
    gen.add_argument("--edges", type=int, default=1, help="Arcs of a directed matching")
    gen.add_argument("--modules", type=int, default=3, help="Modules for modular families")
    gen.add_argument("--max-module-size", type=int, default=3, help="Largest module")
    gen.add_argument("--threshold", type=int, help="Decision threshold to record")
    gen.add_argument("--output", type=Path, help="Write here instead of standard output")
    gen.set_defaults(handler=cmd_gen)

    reduce = sub.add_parser(
        "reduce-coloring", parents=[common], help="Build the k-coloring instance of a graph"
    )
    reduce.add_argument("--input", type=Path, required=True, help="Undirected edge list")
    reduce.add_argument("--k", type=int, default=3, help="Colors and agents (default: 3)")
    reduce.add_argument("--output", type=Path, help="Write here instead of standard output")
    reduce.set_defaults(handler=cmd_reduce_coloring)

    bench = sub.add_parser("bench", parents=[common], help="Time the dispatcher over a directory")
    bench.add_argument("--directory", type=Path, required=True, help="Directory of .fdag files")
    bench.add_argument("--workers", type=int, default=1, help="Worker processes (default: 1)")
    bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or config.log_level)
    try:
        return args.handler(args)
    except (FairdagException, OSError) as e:
        message = " ".join(str(e).split())
        print(f"error code={error_code_for(e)} message={message}", file=sys.stderr)
        logger.debug("cli.failed", command=args.command, error=type(e).__name__)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
