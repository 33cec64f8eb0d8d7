import pytest

from tempologic.tgraph import temporal_graph


@pytest.fixture
def e1():
    """Path a-b-c with edge ab at time 1 and bc at time 2 (strict, undirected)."""
    return temporal_graph("abc", [("a", "b", 1), ("b", "c", 2)])


@pytest.fixture
def triangle():
    """Triangle with one edge per time step 1..3."""
    return temporal_graph("abc", [("a", "b", 1), ("b", "c", 2), ("a", "c", 3)])
