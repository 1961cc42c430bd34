import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from skewspec.core import linalg
from skewspec.core.graphs import (BipartiteOrientedGraph, Graph, OrientedGraph, bipartition, complete_graph,
                                  cycle_graph, default_orientation, edgeless_graph, is_bipartite, path_graph,
                                  regularity, skew_adjacency)
from skewspec.core.maxenergy import find_commuting_kn
from skewspec.core.products import (ProductKind, flat_index, orient_cartesian, orient_kronecker,
                                    orient_kronecker_bipartite, orient_lexicographic, orient_product,
                                    orient_strong, product_graph, product_vertex)
from skewspec.errors import WrongCompleteOrder
from strategies import bipartite_graphs, complete_orientations, oriented_graphs


def adjacent_by_definition(h: Graph, g: Graph, kind: ProductKind, first, second) -> bool:
    (u1, v1), (u2, v2) = first, second
    h_edge, g_edge = h.has_edge(u1, u2), g.has_edge(v1, v2)
    cartesian = (u1 == u2 and g_edge) or (v1 == v2 and h_edge)
    if kind is ProductKind.CARTESIAN:
        return cartesian
    if kind is ProductKind.KRONECKER:
        return h_edge and g_edge
    if kind is ProductKind.STRONG:
        return cartesian or (h_edge and g_edge)
    return h_edge or (u1 == u2 and g_edge)


def definition_edges(h: Graph, g: Graph, kind: ProductKind):
    vertices = [(u, v) for u in range(h.n) for v in range(g.n)]
    return {(flat_index(*a, g.n), flat_index(*b, g.n))
            for i, a in enumerate(vertices) for b in vertices[i + 1:]
            if adjacent_by_definition(h, g, kind, a, b)}


@st.composite
def factor_triples(draw):
    h = draw(bipartite_graphs(max_m=6))
    g = draw(oriented_graphs(min_n=1, max_n=5))
    kn = draw(complete_orientations(g.n))
    return h, g, kn


def gram(s):
    return linalg.matmul(linalg.transpose(s), s)


def test_flat_index_is_h_major():
    assert flat_index(2, 3, 4) == 11
    assert product_vertex(11, 4) == (2, 3)


@seed(20240630)
@settings(max_examples=100, deadline=None)
@given(oriented_graphs(max_n=5), oriented_graphs(max_n=4), st.sampled_from(list(ProductKind)))
def test_product_graph_matches_definitions(h, g, kind):
    product = product_graph(h.graph, g.graph, kind)
    assert product.n == h.n * g.n
    assert set(product.edges) == definition_edges(h.graph, g.graph, kind)


@seed(20240636)
@settings(max_examples=100, deadline=None)
@given(oriented_graphs(max_n=5), oriented_graphs(max_n=4))
def test_strong_and_lex_products_split_into_disjoint_edge_sets(h, g):
    cartesian = product_graph(h.graph, g.graph, ProductKind.CARTESIAN).edges
    kronecker = product_graph(h.graph, g.graph, ProductKind.KRONECKER).edges
    with_complete = product_graph(h.graph, complete_graph(g.n), ProductKind.KRONECKER).edges
    assert not cartesian & kronecker and not cartesian & with_complete
    assert product_graph(h.graph, g.graph, ProductKind.STRONG).edges == cartesian | kronecker
    assert product_graph(h.graph, g.graph, ProductKind.LEXICOGRAPHIC).edges == cartesian | with_complete


def test_kronecker_of_two_edges_is_a_matching():
    product = product_graph(path_graph(2), path_graph(2), ProductKind.KRONECKER)
    assert product.edges == frozenset({(0, 3), (1, 2)})


def test_product_regularities_of_c4_and_k4():
    kronecker = product_graph(cycle_graph(4), complete_graph(4), ProductKind.KRONECKER)
    assert kronecker.n == 16 and regularity(kronecker) == 6 and is_bipartite(kronecker)
    strong = product_graph(cycle_graph(4), complete_graph(4), ProductKind.STRONG)
    assert strong.n == 16 and regularity(strong) == 11


def test_orient_kronecker_of_two_arcs(p2_bipartite, p2):
    s_prime = linalg.bipartite_block([[1]], symmetric=True)
    np.testing.assert_array_equal(skew_adjacency(orient_kronecker(p2_bipartite, p2)),
                                  linalg.kronecker(s_prime, skew_adjacency(p2)))


def test_orient_cartesian_of_two_arcs(p2_bipartite, p2):
    expected = [[0, 1, 1, 0], [-1, 0, 0, 1], [-1, 0, 0, -1], [0, -1, 1, 0]]
    np.testing.assert_array_equal(skew_adjacency(orient_cartesian(p2_bipartite, p2)), expected)


def test_strong_orientation_of_two_arcs_is_a_tournament(p2_bipartite, p2):
    strong = orient_strong(p2_bipartite, p2)
    assert strong.graph == complete_graph(4)
    assert np.count_nonzero(skew_adjacency(strong)) == 12


@pytest.mark.parametrize("build, delta", [(orient_kronecker, 6), (orient_cartesian, 5), (orient_strong, 11)])
def test_max_energy_products_of_c4_and_k4(c4_bipartite, k4, build, delta):
    s = skew_adjacency(build(c4_bipartite, k4))
    np.testing.assert_array_equal(gram(s), delta * linalg.identity(16))


@seed(20240631)
@settings(max_examples=100, deadline=None)
@given(factor_triples())
def test_orientations_have_the_product_as_underlying_graph(triple):
    h, g, kn = triple
    for kind in ProductKind:
        oriented = orient_product(h, g, kind, kn)
        assert oriented.graph == product_graph(h.oriented.graph, g.graph, kind)


@seed(20240632)
@settings(max_examples=100, deadline=None)
@given(factor_triples())
def test_strong_and_lex_are_disjoint_unions(triple):
    h, g, kn = triple
    cartesian, kronecker = orient_cartesian(h, g), orient_kronecker(h, g)
    assert not cartesian.graph.edges & kronecker.graph.edges
    assert orient_strong(h, g).arcs == cartesian.arcs | kronecker.arcs
    assert orient_lexicographic(h, g, kn).arcs == cartesian.arcs | orient_kronecker(h, kn).arcs


@seed(20240633)
@settings(max_examples=100, deadline=None)
@given(factor_triples())
def test_product_matrix_identities(triple):
    h, g, kn = triple
    m, n = h.m, g.n
    s1, s2, s3 = skew_adjacency(h.oriented), skew_adjacency(g), skew_adjacency(kn)
    i_m, i_n = linalg.identity(m), linalg.identity(n)
    s1_sq, s2_sq = linalg.matmul(s1, s1), linalg.matmul(s2, s2)
    s_bar = skew_adjacency(orient_cartesian(h, g))
    s_kron = skew_adjacency(orient_kronecker(h, g))
    s_hat = skew_adjacency(orient_strong(h, g))
    s_lex = skew_adjacency(orient_lexicographic(h, g, kn))
    base = linalg.kronecker(i_m, s2_sq) + linalg.kronecker(s1_sq, i_n)

    np.testing.assert_array_equal(linalg.matmul(s_bar, s_bar.T), -base)
    np.testing.assert_array_equal(linalg.matmul(s_bar, s_kron.T) + linalg.matmul(s_kron, s_bar.T), 0)
    np.testing.assert_array_equal(
        linalg.matmul(s_hat, s_hat.T),
        linalg.kronecker(s1_sq - i_m, s2_sq - i_n) - linalg.identity(m * n))
    commutator = linalg.matmul(s2, s3) - linalg.matmul(s3, s2)
    np.testing.assert_array_equal(
        gram(s_lex),
        -(base - linalg.kronecker(s1_sq, linalg.matmul(s3, s3)) + linalg.kronecker(s1, commutator)))


@seed(20240634)
@settings(max_examples=100, deadline=None)
@given(bipartite_graphs(max_m=4), oriented_graphs(min_n=1, max_n=3), oriented_graphs(min_n=1, max_n=3))
def test_iterated_kronecker_has_block_form(h, g1, g2):
    first = orient_kronecker_bipartite(h, g1)
    assert is_bipartite(first.oriented.graph)
    s = skew_adjacency(orient_kronecker(first, g2))
    block = linalg.kronecker_chain([h.block(), skew_adjacency(g1), skew_adjacency(g2)])
    np.testing.assert_array_equal(s, linalg.bipartite_block(block))
    # Iterating keeps the skew S_0 of H, not its symmetric partner.
    np.testing.assert_array_equal(
        s, linalg.kronecker_chain([skew_adjacency(h.oriented), skew_adjacency(g1), skew_adjacency(g2)]))


@seed(20240635)
@settings(max_examples=100, deadline=None)
@given(bipartite_graphs(max_m=6), oriented_graphs(min_n=1, max_n=5))
def test_kronecker_with_bipartite_factor_is_bipartite(h, g):
    product = orient_kronecker_bipartite(h, g)
    assert product.parts.is_x_first
    bipartition(product.oriented.graph)


def test_lexicographic_with_commuting_kn(p2_bipartite, c4, k4):
    for kn in (k4, find_commuting_kn(c4)):
        lex = orient_lexicographic(p2_bipartite, c4, kn)
        assert lex.n == 8 and regularity(lex.graph) == 6
        np.testing.assert_array_equal(gram(skew_adjacency(lex)), 6 * linalg.identity(8))


def test_lexicographic_with_edgeless_g(p2_bipartite, k4):
    lex = orient_lexicographic(p2_bipartite, default_orientation(edgeless_graph(4)), k4)
    np.testing.assert_array_equal(gram(skew_adjacency(lex)), 4 * linalg.identity(8))


def test_lexicographic_needs_a_complete_graph_of_the_right_order(p2_bipartite, c4, k4):
    with pytest.raises(WrongCompleteOrder):
        orient_lexicographic(p2_bipartite, default_orientation(edgeless_graph(3)), k4)
    with pytest.raises(WrongCompleteOrder):
        orient_lexicographic(p2_bipartite, c4, c4)
    with pytest.raises(WrongCompleteOrder):
        orient_product(p2_bipartite, c4, ProductKind.LEXICOGRAPHIC)


def test_product_kind_names():
    assert [kind.value for kind in ProductKind] == ["cartesian", "kronecker", "strong", "lex"]
    assert ProductKind("lex") is ProductKind.LEXICOGRAPHIC


def test_bipartite_factor_is_relabeled_before_products(c4, k4):
    h = BipartiteOrientedGraph.from_oriented(c4)
    assert h.parts.x == (0, 1)
    assert orient_kronecker(h, k4).n == 16


def test_oriented_graph_from_two_arcs_unchanged(p2):
    assert p2 == OrientedGraph.from_arcs(2, [(0, 1)])
