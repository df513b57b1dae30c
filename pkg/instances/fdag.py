# instances/fdag.py

"""Text formats for instances, allocations, results and undirected graphs.

Instance files (``.fdag``)::

    fdag 1
    n <n> k <k> [d <threshold>]
    a <u> <v>
    ...

Allocation files hold one ``agent <i>: <v1> <v2> ...`` line per agent;
agents that are not listed receive nothing. Everything after ``#`` on a line
is a comment.
"""

from pathlib import Path
from typing import Iterable, Iterator, Optional

import networkx as nx

from core.dag import build_dag
from core.exceptions import InstanceFormatError
from core.logging import get_logger
from core.preferences import Allocation, Instance, SolveResult

logger = get_logger(__name__)

FORMAT_VERSION = 1


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield (line number, tokens) for every line that is not blank or comment-only."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield lineno, tokens


def _to_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise InstanceFormatError(f"line {lineno}: {what} must be an integer, got {token!r}") from e


def parse_instance(text: str) -> Instance:
    """Parse an instance document.

    Raises:
        InstanceFormatError: If the document does not follow the format
        GraphException: If the arcs do not form a DAG over ``n`` items
    """
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise InstanceFormatError("line 1: empty instance file")
    lineno, tokens = header
    if tokens != ["fdag", str(FORMAT_VERSION)]:
        raise InstanceFormatError(f"line {lineno}: expected 'fdag {FORMAT_VERSION}'")

    sizes = next(lines, None)
    if sizes is None:
        raise InstanceFormatError(f"line {lineno + 1}: missing 'n <n> k <k>' line")
    lineno, tokens = sizes
    if len(tokens) not in (4, 6) or tokens[0] != "n" or tokens[2] != "k":
        raise InstanceFormatError(f"line {lineno}: expected 'n <n> k <k> [d <threshold>]'")
    n = _to_int(tokens[1], lineno, "n")
    k = _to_int(tokens[3], lineno, "k")
    threshold = None
    if len(tokens) == 6:
        if tokens[4] != "d":
            raise InstanceFormatError(f"line {lineno}: expected 'd <threshold>', got {tokens[4]!r}")
        threshold = _to_int(tokens[5], lineno, "threshold")

    arcs = []
    for lineno, tokens in lines:
        if tokens[0] != "a" or len(tokens) != 3:
            raise InstanceFormatError(f"line {lineno}: expected 'a <u> <v>'")
        arcs.append((_to_int(tokens[1], lineno, "u"), _to_int(tokens[2], lineno, "v")))

    return Instance(build_dag(n, arcs), k, threshold)


def format_instance(inst: Instance, comments: Iterable[str] = ()) -> str:
    """Render ``inst`` with its arcs sorted; ``comments`` go after the version line."""
    lines = [f"fdag {FORMAT_VERSION}"]
    lines.extend(f"# {comment}" for comment in comments)
    sizes = f"n {inst.n} k {inst.k}"
    if inst.threshold is not None:
        sizes += f" d {inst.threshold}"
    lines.append(sizes)
    lines.extend(f"a {u} {v}" for u, v in sorted(inst.graph.arcs))
    return "\n".join(lines) + "\n"


def read_instance(path: Path) -> Instance:
    inst = parse_instance(Path(path).read_text())
    logger.debug("fdag.read_instance", path=str(path), n=inst.n, k=inst.k)
    return inst


def write_instance(path: Path, inst: Instance, comments: Iterable[str] = ()):
    Path(path).write_text(format_instance(inst, comments))


def parse_allocation(text: str, k: int) -> Allocation:
    """Parse ``agent <i>: ...`` lines into an allocation for ``k`` agents.

    Raises:
        InstanceFormatError: If a line is malformed or an agent appears twice
        InvalidAllocationError: If an agent index lies outside [0, k)
    """
    bundles: dict[int, list[int]] = {}
    for lineno, tokens in _content_lines(text):
        if tokens[0] != "agent" or len(tokens) < 2 or not tokens[1].endswith(":"):
            raise InstanceFormatError(f"line {lineno}: expected 'agent <i>: <items>'")
        agent = _to_int(tokens[1][:-1], lineno, "agent")
        if agent in bundles:
            raise InstanceFormatError(f"line {lineno}: agent {agent} listed twice")
        bundles[agent] = [_to_int(token, lineno, "item") for token in tokens[2:]]
    return Allocation.from_mapping(k, bundles)


def format_allocation(alloc: Allocation) -> str:
    return "".join(
        f"agent {agent}: {' '.join(map(str, items))}".rstrip() + "\n"
        for agent, items in enumerate(alloc.as_lists())
    )


def read_allocation(path: Path, k: int) -> Allocation:
    return parse_allocation(Path(path).read_text(), k)


def format_result(result: SolveResult, extra: Optional[dict[str, object]] = None) -> str:
    """Key-value rendering of a solve result.

    Keys: ``optimum``, ``solver``, then per agent ``items.<i>`` and
    ``dissatisfaction.<i>``, then ``note`` and any ``extra`` keys.
    """
    lines = [f"optimum: {result.optimum}", f"solver: {result.solver.value}"]
    for agent, items in enumerate(result.allocation.as_lists()):
        lines.append(f"items.{agent}: {' '.join(map(str, items))}".rstrip())
        lines.append(f"dissatisfaction.{agent}: {result.profile[agent]}")
    if result.lower_bound_note:
        lines.append(f"note: {result.lower_bound_note}")
    for key, value in (extra or {}).items():
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def read_edge_list(path: Path) -> nx.Graph:
    """Read an undirected graph with integer vertices, one ``u v`` pair per line.

    Raises:
        InstanceFormatError: If a line does not hold two integers
    """
    try:
        h = nx.read_edgelist(Path(path), nodetype=int, data=False)
    except (TypeError, ValueError, IndexError) as e:
        raise InstanceFormatError(f"{path}: not an integer edge list ({e})") from e
    logger.debug("fdag.read_edge_list", path=str(path), vertices=h.number_of_nodes())
    return h