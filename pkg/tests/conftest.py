import pytest

from skewspec.core.graphs import BipartiteOrientedGraph, OrientedGraph
from skewspec.core.maxenergy import seed


@pytest.fixture
def c4():
    return seed("c4")


@pytest.fixture
def k4():
    return seed("k4")


@pytest.fixture
def p2():
    return seed("p2")


@pytest.fixture
def c4_bipartite():
    return BipartiteOrientedGraph.from_oriented(seed("c4"))


@pytest.fixture
def p2_bipartite():
    return BipartiteOrientedGraph.from_oriented(seed("p2"))


@pytest.fixture
def directed_c4():
    return OrientedGraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
