import pytest

from fotrans.graphs import ColoredGraph, graphs_up_to


@pytest.fixture(scope="session")
def corpus4():
    """All isomorphism types on up to 4 vertices, bare."""
    return [ColoredGraph.bare(g) for g in graphs_up_to(4)]


@pytest.fixture(scope="session")
def corpus5():
    return [ColoredGraph.bare(g) for g in graphs_up_to(5)]
