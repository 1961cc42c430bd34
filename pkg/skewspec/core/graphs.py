"""
Undirected graphs, their orientations, and bipartitions.

Vertices are always the dense integers ``0..n-1``. Every relabeling is an
explicit permutation ``perm`` with ``perm[old] == new``.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from skewspec.core.linalg import IntMatrix, as_int_matrix, require_skew_symmetric
from skewspec.errors import GraphError, NotBipartite

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
Arc = Tuple[int, int]
Permutation = Tuple[int, ...]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    A simple undirected graph on vertices ``0..n-1``.

    Edges are stored as ``(min, max)`` pairs; use :meth:`from_edges` to build
    one from pairs in any order.
    """

    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u}, {v}) is not a normalized pair of vertices below {self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            normalized.add(_edge(u, v))
        return cls(n=n, edges=frozenset(normalized))

    @cached_property
    def sorted_edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        neighbours: Dict[int, List[int]] = {v: [] for v in range(self.n)}
        for u, v in self.edges:
            neighbours[u].append(v)
            neighbours[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in neighbours.items()}

    def degree(self, v: int) -> int:
        """
        Number of neighbours of ``v``.

        :param v: A vertex in ``0..n-1``.
        :return: The degree of ``v``.
        """
        return len(self.adjacency[v])

    def degrees(self) -> Tuple[int, ...]:
        return tuple(self.degree(v) for v in range(self.n))

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """
        Converts a networkx graph whose nodes are exactly ``0..n-1``.

        :param graph: An undirected networkx graph.
        :return: The same graph as a frozen :class:`Graph`.
        :raises GraphError: if the nodes are not ``0..n-1`` or the graph has a loop.
        """
        n = graph.number_of_nodes()
        if set(graph.nodes) != set(range(n)):
            raise GraphError(f"networkx graph nodes must be the integers 0..{n - 1}")
        return cls.from_edges(n, graph.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class OrientedGraph:
    """
    A graph together with a direction on every edge.

    ``arcs`` holds exactly one of ``(u, v)`` / ``(v, u)`` per edge of ``graph``.
    """

    graph: Graph
    arcs: FrozenSet[Arc]

    def __post_init__(self):
        if len(self.arcs) != len(self.graph.edges):
            raise GraphError(f"{len(self.arcs)} arcs for {len(self.graph.edges)} edges")
        for u, v in self.arcs:
            if _edge(u, v) not in self.graph.edges:
                raise GraphError(f"arc {u}->{v} has no underlying edge")
        if len({_edge(u, v) for u, v in self.arcs}) != len(self.arcs):
            raise GraphError("an edge carries both directions")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "OrientedGraph":
        arc_set = frozenset((int(u), int(v)) for u, v in arcs)
        seen = set()
        for u, v in arc_set:
            edge = _edge(u, v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if edge in seen:
                raise GraphError(f"edge {edge[0]}-{edge[1]} is oriented both ways")
            seen.add(edge)
        return cls(graph=Graph(n=n, edges=frozenset(seen)), arcs=arc_set)

    @classmethod
    def from_skew(cls, s) -> "OrientedGraph":
        """Reads the orientation back from a skew-adjacency matrix with entries in {-1, 0, 1}."""
        s = require_skew_symmetric(s)
        if s.size and np.max(np.abs(s)) > 1:
            raise GraphError("skew-adjacency entries must lie in {-1, 0, 1}")
        rows, cols = np.nonzero(s == 1)
        return cls.from_arcs(s.shape[0], zip(rows.tolist(), cols.tolist()))

    @property
    def n(self) -> int:
        return self.graph.n

    @cached_property
    def sorted_arcs(self) -> Tuple[Arc, ...]:
        return tuple(sorted(self.arcs))

    def reversed(self) -> "OrientedGraph":
        return OrientedGraph(graph=self.graph, arcs=frozenset((v, u) for u, v in self.arcs))


@dataclass(frozen=True)
class Bipartition:
    """The (X, Y) split of a bipartite graph; both sides listed in ascending order."""

    x: Tuple[int, ...]
    y: Tuple[int, ...]

    @property
    def m1(self) -> int:
        return len(self.x)

    @property
    def m2(self) -> int:
        return len(self.y)

    @property
    def is_x_first(self) -> bool:
        return self.x == tuple(range(self.m1))

    def validate(self, g: Graph) -> None:
        """
        Checks that (x, y) partitions the vertices of ``g`` and that no edge stays inside a side.

        :raises GraphError: if the sides do not partition ``0..n-1``.
        :raises NotBipartite: with the first edge found inside one side.
        """
        if sorted(self.x + self.y) != list(range(g.n)):
            raise GraphError("bipartition sides do not partition the vertex set")
        side = set(self.x)
        for u, v in g.sorted_edges:
            if (u in side) == (v in side):
                raise NotBipartite((u, v))


def _odd_cycle_edge(component: nx.Graph, root: int) -> Edge:
    # In a breadth-first layering, an edge inside one layer closes an odd cycle.
    depth = nx.single_source_shortest_path_length(component, root)
    return next(_edge(u, v) for u, v in sorted(component.edges) if depth[u] == depth[v])


def bipartition(g: Graph) -> Bipartition:
    """
    2-colours ``g`` one connected component at a time.

    The smallest vertex of every component goes to X; isolated vertices
    therefore land in X as well.

    :param g: The graph to split.
    :return: The deterministic bipartition of ``g``.
    :raises NotBipartite: reporting an edge that closes an odd cycle.
    """
    graph = g.to_networkx()
    colour: Dict[int, int] = {}
    for nodes in nx.connected_components(graph):
        component = graph.subgraph(nodes)
        root = min(nodes)
        try:
            sides = nx.bipartite.color(component)
        except nx.NetworkXError:
            raise NotBipartite(_odd_cycle_edge(component, root)) from None
        flip = sides[root]
        colour.update((v, side ^ flip) for v, side in sides.items())
    x = tuple(v for v in range(g.n) if colour[v] == 0)
    y = tuple(v for v in range(g.n) if colour[v] == 1)
    return Bipartition(x=x, y=y)


def is_bipartite(g: Graph) -> bool:
    """Answers without building a bipartition; use :func:`bipartition` for the sides."""
    return nx.is_bipartite(g.to_networkx())


def relabel(h: OrientedGraph, perm: Permutation) -> OrientedGraph:
    """Applies ``perm`` (old -> new) to every arc of ``h``."""
    if sorted(perm) != list(range(h.n)):
        raise GraphError("relabeling is not a permutation of the vertex set")
    return OrientedGraph.from_arcs(h.n, ((perm[u], perm[v]) for u, v in h.arcs))


def relabel_x_first(h: OrientedGraph, b: Bipartition) -> Tuple[OrientedGraph, Permutation]:
    """
    Relabels ``h`` so that X occupies ``0..m1-1`` and Y occupies ``m1..m-1``.

    Both sides keep their relative order, so an input that is already X-first
    comes back with the identity permutation.

    :param h: An oriented bipartite graph.
    :param b: A bipartition of ``h.graph``.
    :return: The relabeled graph and the permutation applied (``perm[old] == new``).
    """
    b.validate(h.graph)
    perm = [0] * h.n
    for new, old in enumerate(b.x + b.y):
        perm[old] = new
    permutation = tuple(perm)
    return relabel(h, permutation), permutation


def permutation_matrix(perm: Permutation) -> IntMatrix:
    """P with P[new][old] = 1, so that S_new = P S P^T."""
    n = len(perm)
    p = np.zeros((n, n), dtype=np.int64)
    p[list(perm), list(range(n))] = 1
    return p


def skew_adjacency(g: OrientedGraph) -> IntMatrix:
    """
    The skew-adjacency matrix: S[i][j] = 1 and S[j][i] = -1 for every arc i -> j.
    """
    s = np.zeros((g.n, g.n), dtype=np.int64)
    if g.arcs:
        tails, heads = np.array(g.sorted_arcs, dtype=np.int64).T
        s[tails, heads] = 1
        s[heads, tails] = -1
    return s


def regularity(g: Graph) -> Optional[int]:
    """Returns k when every vertex has degree k, otherwise None."""
    degrees = set(g.degrees())
    if len(degrees) == 1:
        return degrees.pop()
    return None


def is_complete(g: Graph) -> bool:
    """True when every pair of distinct vertices is joined."""
    return len(g.edges) == g.n * (g.n - 1) // 2


@dataclass(frozen=True)
class BipartiteOrientedGraph:
    """
    An oriented bipartite graph labeled X-first, so its skew-adjacency
    matrix has the block form [[0, A], [-A^T, 0]].
    """

    oriented: OrientedGraph
    parts: Bipartition

    def __post_init__(self):
        self.parts.validate(self.oriented.graph)
        if not self.parts.is_x_first:
            raise GraphError("bipartite factor must be labeled X-first; use relabel_x_first")

    @classmethod
    def from_oriented(cls, h: OrientedGraph) -> "BipartiteOrientedGraph":
        """Detects the bipartition of ``h`` and relabels it X-first when necessary."""
        parts = bipartition(h.graph)
        if parts.is_x_first:
            return cls(oriented=h, parts=parts)
        relabeled, perm = relabel_x_first(h, parts)
        logger.debug("relabeled bipartite factor X-first with permutation %s", perm)
        return cls(oriented=relabeled, parts=Bipartition(x=tuple(range(parts.m1)),
                                                         y=tuple(range(parts.m1, h.n))))

    @property
    def m(self) -> int:
        return self.oriented.n

    @property
    def m1(self) -> int:
        return self.parts.m1

    @property
    def m2(self) -> int:
        return self.parts.m2

    def in_x(self, u: int) -> bool:
        return u < self.parts.m1

    def block(self) -> IntMatrix:
        """The m1 x m2 block A of S = [[0, A], [-A^T, 0]]."""
        return as_int_matrix(skew_adjacency(self.oriented)[:self.m1, self.m1:])


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def cycle_graph(n: int) -> Graph:
    """The n-cycle; ``n`` must be at least 3."""
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def complete_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def edgeless_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.empty_graph(n))


def default_orientation(g: Graph) -> OrientedGraph:
    """Orients every edge from its smaller endpoint to its larger one."""
    return OrientedGraph(graph=g, arcs=frozenset(g.edges))


def orientation_from_bits(g: Graph, bits: int) -> OrientedGraph:
    """
    Decodes an orientation code: bit e of ``bits`` reverses the default
    (smaller -> larger endpoint) direction of the e-th edge in lexicographic order.
    """
    edges = g.sorted_edges
    if not 0 <= bits < (1 << len(edges)):
        raise GraphError(f"orientation code {bits} out of range for {len(edges)} edges")
    arcs = frozenset((v, u) if bits >> e & 1 else (u, v) for e, (u, v) in enumerate(edges))
    return OrientedGraph(graph=g, arcs=arcs)


def orientation_bits(h: OrientedGraph) -> int:
    """Inverse of :func:`orientation_from_bits`."""
    return sum(1 << e for e, (u, v) in enumerate(h.graph.sorted_edges) if (v, u) in h.arcs)
