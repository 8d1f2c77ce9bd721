import networkx as nx
import numpy as np
import pytest

from ramsey.core.coloring import EdgeColoring
from ramsey.core.graph import color_class_graph
from ramsey.core.trees import TreeSpec, path_tree, random_tree, star_tree
from ramsey.core.verify import verify_certificate
from ramsey.embedding.mono import embed_first_dense, lemma1_dense, mono_from_dense_color_class
from ramsey.embedding.peeling import greedy_tree_embed, min_degree, peel_to_min_degree
from ramsey.errors import PreconditionError
from ramsey.models import MonoEmbedding


def adjacency_coloring(G: nx.Graph):
    """Two-coloring of K_n: label 1 on the edges of G, label 0 elsewhere."""
    A = nx.to_numpy_array(G, nodelist=range(G.number_of_nodes()), dtype=np.int64)
    coloring = EdgeColoring.from_matrix(A)
    edge_color = int(np.searchsorted(coloring.labels, 1))
    return coloring, edge_color


def test_dense_graphs_host_every_tree():
    """
    500 random graphs with e >= s*v and random trees with s edges.

    Expectation:
    - an embedding is always found in the edge color
    - the certificate verifies against the two-coloring
    """
    rng = np.random.default_rng(2024)
    for trial in range(500):
        s = int(rng.integers(1, 6))
        v = int(rng.integers(2 * s + 1, 31))
        m = int(rng.integers(s * v, v * (v - 1) // 2 + 1))
        G = nx.gnm_random_graph(v, m, seed=trial)
        S = random_tree(s, seed=trial)
        coloring, edge_color = adjacency_coloring(G)
        cert = mono_from_dense_color_class(coloring, S, [edge_color])
        assert cert is not None, (trial, s, v, m)
        assert cert.color == edge_color
        assert verify_certificate(coloring, S, None, cert)


def test_monochromatic_clique_hosts_star():
    coloring = EdgeColoring.monochromatic(7)
    cert = mono_from_dense_color_class(coloring, star_tree(3), coloring.palette)
    assert isinstance(cert, MonoEmbedding)
    assert cert.mapping[0] == 0
    assert verify_certificate(coloring, star_tree(3), None, cert)


def test_rainbow_clique_has_no_mono_path():
    coloring = EdgeColoring.rainbow(6)
    assert mono_from_dense_color_class(coloring, path_tree(2), coloring.palette) is None


def test_empty_candidate_set():
    coloring = EdgeColoring.monochromatic(5)
    assert mono_from_dense_color_class(coloring, path_tree(2), []) is None


def test_vertex_scope_restricts_the_class():
    coloring = EdgeColoring.monochromatic(10)
    assert mono_from_dense_color_class(coloring, star_tree(3), [0], np.array([0, 1, 2])) is None
    cert = mono_from_dense_color_class(coloring, star_tree(3), [0], np.array([2, 4, 6, 8]))
    assert sorted(cert.mapping) == [2, 4, 6, 8]


def test_affine_lines_host_paths(affine5):
    """Each class is 5 disjoint K_5: not dense overall but every line has min degree 4."""
    cert = mono_from_dense_color_class(affine5, path_tree(4), affine5.palette)
    assert cert is not None
    assert verify_certificate(affine5, path_tree(4), None, cert)
    assert mono_from_dense_color_class(affine5, path_tree(5), affine5.palette) is None


def test_single_vertex_tree():
    coloring = EdgeColoring.monochromatic(3)
    graphs = {0: color_class_graph(coloring, 0)}
    cert = embed_first_dense(coloring, TreeSpec(vertex_count=1), graphs)
    assert cert == MonoEmbedding(color=0, mapping=[0])


def test_lemma1_dense():
    assert lemma1_dense(10, 5, 2)
    assert not lemma1_dense(9, 5, 2)
    assert not lemma1_dense(0, 0, 1)


def test_peeling_is_idempotent():
    G = nx.gnp_random_graph(60, 0.15, seed=7)
    for s in (1, 2, 4, 8):
        core = peel_to_min_degree(G, s)
        again = peel_to_min_degree(core, s)
        assert set(core.nodes) == set(again.nodes)
        assert core.number_of_nodes() == 0 or min_degree(core) >= s


def test_peeling_keeps_core_of_dense_graph():
    G = nx.complete_graph(6)
    G.add_edges_from([(5, 6), (6, 7)])
    core = peel_to_min_degree(G, 3)
    assert set(core.nodes) == set(range(6))
    with pytest.raises(PreconditionError):
        peel_to_min_degree(G, 0)


def test_greedy_embed_preconditions():
    with pytest.raises(PreconditionError):
        greedy_tree_embed(nx.Graph(), path_tree(1))
    with pytest.raises(PreconditionError, match="min degree"):
        greedy_tree_embed(nx.path_graph(4), star_tree(3))
    mapping = greedy_tree_embed(nx.complete_graph(4), star_tree(3))
    assert mapping == [0, 1, 2, 3]
