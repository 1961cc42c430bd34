"""Random oriented graphs for the randomized verification harness."""
from typing import List

import numpy as np

from skewspec.core.graphs import Bipartition, BipartiteOrientedGraph, OrientedGraph


def random_oriented_graph(rng: np.random.Generator, n: int, p: float = 0.5) -> OrientedGraph:
    """Erdos-Renyi G(n, p) with every edge oriented by a fair coin."""
    arcs: List[tuple] = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return OrientedGraph.from_arcs(n, arcs)


def random_bipartite_oriented(rng: np.random.Generator, m1: int, m2: int,
                              p: float = 0.5) -> BipartiteOrientedGraph:
    """A random oriented bipartite graph with X = 0..m1-1 and Y = m1..m1+m2-1."""
    arcs: List[tuple] = []
    for u in range(m1):
        for w in range(m1, m1 + m2):
            if rng.random() < p:
                arcs.append((u, w) if rng.random() < 0.5 else (w, u))
    oriented = OrientedGraph.from_arcs(m1 + m2, arcs)
    parts = Bipartition(x=tuple(range(m1)), y=tuple(range(m1, m1 + m2)))
    return BipartiteOrientedGraph(oriented=oriented, parts=parts)
