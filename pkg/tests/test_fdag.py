"""Tests for the instance, allocation and edge-list file formats."""

import pytest

from core.dag import build_dag
from core.exceptions import CycleDetectedError, InstanceFormatError, InvalidAllocationError
from core.preferences import Allocation, Instance, SolverName, make_result
from instances.fdag import (
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


class TestInstanceFormat:
    """Test parsing and rendering of instance documents."""

    def test_parse(self):
        inst = parse_instance("fdag 1\nn 3 k 2 d 1\na 0 1\na 1 2\n")
        assert inst.n == 3
        assert inst.k == 2
        assert inst.threshold == 1
        assert sorted(inst.graph.arcs) == [(0, 1), (1, 2)]

    def test_comments_and_blank_lines(self):
        text = "# generated\nfdag 1\n\nn 2 k 1  # sizes\n# arcs follow\na 0 1\n"
        inst = parse_instance(text)
        assert sorted(inst.graph.arcs) == [(0, 1)]
        assert inst.threshold is None

    def test_format_sorts_arcs_and_places_comments(self, chain3):
        text = format_instance(Instance(chain3, 2, threshold=1), comments=["family chain"])
        assert text == "fdag 1\n# family chain\nn 3 k 2 d 1\na 0 1\na 1 2\n"

    def test_format_then_parse(self, diamond):
        inst = parse_instance(format_instance(Instance(diamond, 3)))
        assert sorted(inst.graph.arcs) == sorted(diamond.arcs)
        assert inst.k == 3

    @pytest.mark.parametrize(
        ("text", "line"),
        [
            ("", "line 1:"),
            ("fdag 2\nn 1 k 1\n", "line 1:"),
            ("fdag 1\n", "line 2:"),
            ("fdag 1\nn 2 q 1\n", "line 2:"),
            ("fdag 1\nn 2 k 1 t 0\n", "line 2:"),
            ("fdag 1\nn 2 k 1\na 0\n", "line 3:"),
            ("fdag 1\nn 2 k 1\n\nb 0 1\n", "line 4:"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(InstanceFormatError) as exc_info:
            parse_instance(text)
        assert str(exc_info.value).startswith(line)

    def test_malformed_fixture(self, fixtures_dir):
        with pytest.raises(InstanceFormatError) as exc_info:
            read_instance(fixtures_dir / "malformed.bad")
        assert exc_info.value.code == "format_error"
        assert "line 3:" in str(exc_info.value)

    def test_graph_errors_pass_through(self):
        with pytest.raises(CycleDetectedError):
            parse_instance("fdag 1\nn 2 k 1\na 0 1\na 1 0\n")

    def test_write_and_read(self, tmp_path, out_star):
        path = tmp_path / "star.fdag"
        write_instance(path, Instance(out_star, 2), comments=["star"])
        inst = read_instance(path)
        assert sorted(inst.graph.arcs) == [(0, 1), (0, 2)]

    def test_fixtures(self, fixtures_dir):
        stars = read_instance(fixtures_dir / "stars_10_1_1_1.fdag")
        assert (stars.n, stars.k) == (17, 2)
        gadget = read_instance(fixtures_dir / "gadget_threshold.fdag")
        assert gadget.threshold == 1


class TestAllocationFormat:
    """Test allocation documents."""

    def test_parse(self):
        alloc = parse_allocation("agent 1: 3 4\n# nothing for agent 0\n", 2)
        assert alloc.as_lists() == [[], [3, 4]]

    def test_duplicate_agent(self):
        with pytest.raises(InstanceFormatError):
            parse_allocation("agent 0: 1\nagent 0: 2\n", 2)

    def test_unknown_agent(self):
        with pytest.raises(InvalidAllocationError):
            parse_allocation("agent 5: 1\n", 2)

    def test_bad_line(self):
        with pytest.raises(InstanceFormatError) as exc_info:
            parse_allocation("agent 0: 1\nagents 1 2\n", 2)
        assert str(exc_info.value).startswith("line 2:")

    def test_format(self):
        text = format_allocation(Allocation.from_bundles([[2, 0], []]))
        assert text == "agent 0: 0 2\nagent 1:\n"
        assert parse_allocation(text, 2).as_lists() == [[0, 2], []]

    def test_fixture(self, fixtures_dir):
        alloc = read_allocation(fixtures_dir / "gadget_split.alloc", 2)
        assert alloc.as_lists() == [[0], [1]]


class TestResultFormat:
    def test_keys(self, chain3):
        inst = Instance(chain3, 2)
        result = make_result(inst, Allocation.from_bundles([[0], [1]]), SolverName.ORACLE)
        text = format_result(result, extra={"threshold": 1})
        assert text.splitlines() == [
            "optimum: 1",
            "solver: oracle",
            "items.0: 0",
            "dissatisfaction.0: 0",
            "items.1: 1",
            "dissatisfaction.1: 1",
            "threshold: 1",
        ]


class TestEdgeList:
    def test_read(self, fixtures_dir):
        h = read_edge_list(fixtures_dir / "c5.edges")
        assert h.number_of_nodes() == 5
        assert h.number_of_edges() == 5

    def test_non_integer(self, tmp_path):
        path = tmp_path / "bad.edges"
        path.write_text("0 a\n")
        with pytest.raises(InstanceFormatError):
            read_edge_list(path)

    def test_built_instance_matches(self, fixtures_dir):
        h = read_edge_list(fixtures_dir / "edge.edges")
        assert sorted(h.edges) == [(0, 1)]
        assert build_dag(2, list(h.edges)).arc_count == 1
