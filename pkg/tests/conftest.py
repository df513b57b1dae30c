"""Pytest configuration and shared fixtures."""

import pytest

from core.dag import build_dag
from core.preferences import Instance

from .helpers import FIXTURES


@pytest.fixture
def fixtures_dir():
    """Directory holding the versioned instance and edge-list files."""
    return FIXTURES


@pytest.fixture
def make_instance():
    """Build an instance from an item count, arcs and agent count."""

    def _make(n, arcs, k, threshold=None):
        return Instance(build_dag(n, arcs), k, threshold)

    return _make


@pytest.fixture
def chain3():
    """Directed path 0 -> 1 -> 2."""
    return build_dag(3, [(0, 1), (1, 2)])


@pytest.fixture
def out_star():
    """Root 0 with leaves 1 and 2."""
    return build_dag(3, [(0, 1), (0, 2)])


@pytest.fixture
def bipartite_gadget():
    """Complete arcs from {0, 1} to {2, 3}."""
    return build_dag(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.fixture
def edgeless4():
    return build_dag(4, [])


@pytest.fixture
def diamond():
    """0 -> {1, 2} -> 3."""
    return build_dag(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
