"""
Graph products of a bipartite H with an arbitrary G, and their orientations.

Product vertex (u, v) has the flat index ``u * n + v`` (H-major), which is
the index convention of :func:`skewspec.core.linalg.kronecker`. Every
orientation is built twice, once by its arc rule and once by its matrix
formula, and the two must agree exactly.
"""
import enum
import logging
from typing import Callable, FrozenSet, Iterable, Iterator, Optional, Set, Tuple

import networkx as nx
import numpy as np

from skewspec.core import linalg
from skewspec.core.graphs import (Arc, Bipartition, BipartiteOrientedGraph, Edge, Graph,
                                  OrientedGraph, is_complete, skew_adjacency)
from skewspec.core.linalg import IntMatrix
from skewspec.errors import ConstructionMismatch, WrongCompleteOrder

logger = logging.getLogger(__name__)


class ProductKind(str, enum.Enum):
    CARTESIAN = "cartesian"
    KRONECKER = "kronecker"
    STRONG = "strong"
    LEXICOGRAPHIC = "lex"


def flat_index(u: int, v: int, n: int) -> int:
    return u * n + v


def product_vertex(index: int, n: int) -> Tuple[int, int]:
    """Inverse of :func:`flat_index`: returns (h_index, g_index)."""
    return divmod(index, n)


def _ordered_pairs(edges: Iterable[Edge]) -> Iterator[Tuple[int, int]]:
    for a, b in edges:
        yield a, b
        yield b, a


_NETWORKX_PRODUCTS = {
    ProductKind.CARTESIAN: nx.cartesian_product,
    ProductKind.KRONECKER: nx.tensor_product,
    ProductKind.STRONG: nx.strong_product,
    ProductKind.LEXICOGRAPHIC: nx.lexicographic_product,
}


def product_graph(h: Graph, g: Graph, kind: ProductKind) -> Graph:
    """
    Builds the product H x G of the requested kind on flat vertex indices.

    The lexicographic product H[G] replaces every vertex of H by a copy of G.

    :param h: First factor, order m.
    :param g: Second factor, order n.
    :param kind: Which product to form.
    :return: A graph on m * n vertices.
    """
    product = _NETWORKX_PRODUCTS[ProductKind(kind)](h.to_networkx(), g.to_networkx())
    n = g.n
    return Graph.from_networkx(nx.relabel_nodes(product, lambda pair: flat_index(pair[0], pair[1], n)))


def kronecker_formula(h: BipartiteOrientedGraph, g_matrix: IntMatrix) -> IntMatrix:
    """S = S'_1 (x) S_2, with S'_1 = [[0, A], [A^T, 0]]."""
    return linalg.kronecker(linalg.bipartite_block(h.block(), symmetric=True), g_matrix)


def cartesian_formula(h: BipartiteOrientedGraph, g_matrix: IntMatrix) -> IntMatrix:
    """S-bar = I'_{m1+m2} (x) S_2 + S_1 (x) I_n."""
    n = g_matrix.shape[0]
    return linalg.add(
        linalg.kronecker(linalg.signed_identity(h.m1, h.m2), g_matrix),
        linalg.kronecker(skew_adjacency(h.oriented), linalg.identity(n)),
    )


def _kronecker_arcs(h: BipartiteOrientedGraph, g: OrientedGraph) -> Set[Arc]:
    n = g.n
    h_arcs, g_arcs = h.oriented.arcs, g.arcs
    arcs = set()
    for a, b in h.oriented.graph.edges:
        u1, u2 = (a, b) if h.in_x(a) else (b, a)
        for v1, v2 in _ordered_pairs(g.graph.edges):
            forward = (((u1, u2) in h_arcs and (v1, v2) in g_arcs)
                       or ((u2, u1) in h_arcs and (v2, v1) in g_arcs))
            tail, head = flat_index(u1, v1, n), flat_index(u2, v2, n)
            arcs.add((tail, head) if forward else (head, tail))
    return arcs


def _cartesian_arcs(h: BipartiteOrientedGraph, g: OrientedGraph) -> Set[Arc]:
    n = g.n
    arcs = set()
    for u in range(h.m):
        for v1, v2 in g.arcs:
            if h.in_x(u):
                arcs.add((flat_index(u, v1, n), flat_index(u, v2, n)))
            else:
                # Y-side copies of G run against the orientation of G.
                arcs.add((flat_index(u, v2, n), flat_index(u, v1, n)))
    for u1, u2 in h.oriented.arcs:
        for v in range(n):
            arcs.add((flat_index(u1, v, n), flat_index(u2, v, n)))
    return arcs


def _disjoint_union(first: Set[Arc], second: Set[Arc]) -> FrozenSet[Arc]:
    edges_first = {(min(a, b), max(a, b)) for a, b in first}
    edges_second = {(min(a, b), max(a, b)) for a, b in second}
    assert not edges_first & edges_second, "constituent arc sets must be edge-disjoint"
    return frozenset(first | second)


def _cross_checked(name: str, order: int, arcs: Iterable[Arc],
                   formula: Callable[[], IntMatrix]) -> OrientedGraph:
    oriented = OrientedGraph.from_arcs(order, arcs)
    expected = formula()
    if not np.array_equal(skew_adjacency(oriented), expected):
        mismatch = np.argwhere(skew_adjacency(oriented) != expected)[0]
        raise ConstructionMismatch(
            f"{name}: arc rule and matrix formula disagree at entry ({mismatch[0]}, {mismatch[1]})")
    logger.debug("%s orientation on %d vertices with %d arcs cross-checked", name, order, len(oriented.arcs))
    return oriented


def orient_kronecker(h: BipartiteOrientedGraph, g: OrientedGraph) -> OrientedGraph:
    """
    Orients H (x) G: with u1 in X, (u1, v1) -> (u2, v2) when <u1, u2> and <v1, v2>
    are both arcs, or both are reversed; otherwise the arc points the other way.

    :param h: Bipartite factor labeled X-first.
    :param g: Arbitrary oriented factor.
    :return: The oriented product, whose skew-adjacency matrix is S'_1 (x) S_2.
    """
    return _cross_checked("kronecker", h.m * g.n, _kronecker_arcs(h, g),
                          lambda: kronecker_formula(h, skew_adjacency(g)))


def kronecker_parts(h: BipartiteOrientedGraph, n: int) -> Bipartition:
    """The inherited bipartition X' = X x V(G), already X-first under flat indexing."""
    split = h.m1 * n
    return Bipartition(x=tuple(range(split)), y=tuple(range(split, h.m * n)))


def orient_kronecker_bipartite(h: BipartiteOrientedGraph, g: OrientedGraph) -> BipartiteOrientedGraph:
    """:func:`orient_kronecker` carrying the inherited bipartition, ready for the next factor."""
    return BipartiteOrientedGraph(oriented=orient_kronecker(h, g), parts=kronecker_parts(h, g.n))


def orient_cartesian(h: BipartiteOrientedGraph, g: OrientedGraph) -> OrientedGraph:
    """
    Orients H [] G. Copies of G over X follow G, copies over Y run against it,
    and copies of H follow H.

    :return: The oriented product, whose skew-adjacency matrix is I' (x) S_2 + S_1 (x) I_n.
    """
    return _cross_checked("cartesian", h.m * g.n, _cartesian_arcs(h, g),
                          lambda: cartesian_formula(h, skew_adjacency(g)))


def orient_strong(h: BipartiteOrientedGraph, g: OrientedGraph) -> OrientedGraph:
    """Orients H * G as the edge-disjoint union of the Cartesian and Kronecker orientations."""
    arcs = _disjoint_union(_cartesian_arcs(h, g), _kronecker_arcs(h, g))
    s2 = skew_adjacency(g)
    return _cross_checked("strong", h.m * g.n, arcs,
                          lambda: linalg.add(cartesian_formula(h, s2), kronecker_formula(h, s2)))


def orient_lexicographic(h: BipartiteOrientedGraph, g: OrientedGraph, kn: OrientedGraph) -> OrientedGraph:
    """
    Orients H[G] as the union of (H [] G)^o and (H (x) K_n)^o.

    :param h: Bipartite factor labeled X-first.
    :param g: Oriented graph on n vertices.
    :param kn: An orientation of the complete graph on the same n vertices.
    :return: The oriented product, whose skew-adjacency matrix is S-bar + S'_1 (x) S_3.
    :raises WrongCompleteOrder: if ``kn`` is not complete or has the wrong order.
    """
    if kn.n != g.n:
        raise WrongCompleteOrder(f"K_n orientation has {kn.n} vertices, G has {g.n}")
    if not is_complete(kn.graph):
        raise WrongCompleteOrder(f"third factor on {kn.n} vertices is not complete")
    arcs = _disjoint_union(_cartesian_arcs(h, g), _kronecker_arcs(h, kn))
    return _cross_checked("lex", h.m * g.n, arcs,
                          lambda: linalg.add(cartesian_formula(h, skew_adjacency(g)),
                                             kronecker_formula(h, skew_adjacency(kn))))


def orient_product(h: BipartiteOrientedGraph, g: OrientedGraph, kind: ProductKind,
                   kn: Optional[OrientedGraph] = None) -> OrientedGraph:
    kind = ProductKind(kind)
    if kind is ProductKind.CARTESIAN:
        return orient_cartesian(h, g)
    if kind is ProductKind.KRONECKER:
        return orient_kronecker(h, g)
    if kind is ProductKind.STRONG:
        return orient_strong(h, g)
    if kn is None:
        raise WrongCompleteOrder("the lexicographic orientation needs an oriented K_n")
    return orient_lexicographic(h, g, kn)
