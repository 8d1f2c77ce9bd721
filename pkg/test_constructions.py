import networkx as nx
import numpy as np
import pytest
from scipy import stats

from ramsey.constructions.affine import affine_plane_coloring, is_prime
from ramsey.constructions.baselines import lexical_coloring, random_coloring, subsample
from ramsey.constructions.grid import GridConstructionSpec, grid_construction, grid_metadata
from ramsey.constructions.layered import layer_of, layered_coloring
from ramsey.errors import PreconditionError
from ramsey.oracle.profiles import max_distinct_colors_at_vertex, mono_component_profile
from ramsey.rainbow.subgraph import check_property_ii, check_property_iii


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11])
def test_affine_lines_are_cliques(q):
    """
    Every slope class is a parallel class: q disjoint q-cliques.

    Expectation:
    - palette exactly q+1
    - q components per color, every one a clique of order q
    """
    coloring = affine_plane_coloring(q)
    assert coloring.n == q * q
    assert coloring.k == q + 1
    profile = mono_component_profile(coloring)
    assert len(profile) == q + 1
    assert (profile["components"] == q).all()
    assert (profile["min_order"] == q).all()
    assert (profile["max_order"] == q).all()
    assert profile["all_cliques"].all()
    assert (profile["edges"] == q * q * (q - 1) // 2).all()


def test_affine_q2_perfect_matchings():
    coloring = affine_plane_coloring(2)
    assert sorted(coloring.class_sizes().tolist()) == [2, 2, 2]


@pytest.mark.parametrize("q", [0, 1, 4, 9])
def test_affine_rejects_non_primes(q):
    with pytest.raises(PreconditionError):
        affine_plane_coloring(q)


def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_lexical_definition():
    coloring = lexical_coloring(10)
    assert coloring.k == 9
    for u in range(10):
        for v in range(u + 1, 10):
            assert coloring.label_of(coloring.color_of(u, v)) == v
    # the increasing path is rainbow
    colors = {coloring.color_of(i, i + 1) for i in range(9)}
    assert len(colors) == 9


def test_lexical_classes_are_stars():
    profile = mono_component_profile(lexical_coloring(8))
    assert (profile["components"] == 1).all()
    assert profile.set_index("label").loc[1, "all_cliques"]
    assert not profile.set_index("label").loc[2:, "all_cliques"].any()


def test_random_coloring_is_deterministic():
    a = random_coloring(6, 3, seed=7)
    b = random_coloring(6, 3, seed=7)
    assert a == b
    assert random_coloring(10, 1, seed=0).k == 1


def test_random_coloring_class_sizes_are_uniform():
    """Chi-square over 100 seeds of K_30 with two colors."""
    sizes = np.array([random_coloring(30, 2, seed).class_sizes() for seed in range(100)])
    totals = sizes.sum(axis=0)
    result = stats.chisquare(totals)
    assert result.pvalue > 1e-4
    assert abs(sizes[:, 0].mean() - 217.5) < 4 * np.sqrt(435 / 4 / 100)


def test_subsample_edges():
    coloring = affine_plane_coloring(7)
    assert subsample(coloring, 1.0, seed=0) is coloring
    with pytest.raises(PreconditionError, match="fewer than 2 vertices"):
        subsample(coloring, 0.0, seed=0)


def test_subsample_size_and_palette():
    coloring = affine_plane_coloring(7)
    sub = subsample(coloring, 3 / 7, seed=42)
    low, high = stats.binom.interval(0.999, 49, 3 / 7)
    assert low <= sub.n <= high
    assert set(sub.labels.tolist()) <= set(coloring.labels.tolist())


def test_subsampled_affine_components_stay_small():
    """Keeping each point with probability s/t leaves mono components of order about s."""
    q, s = 11, 3
    sizes = []
    for seed in range(20):
        profile = mono_component_profile(subsample(affine_plane_coloring(q), s / q, seed))
        assert profile["all_cliques"].all()
        sizes.append(profile["max_order"].max())
    assert np.median(sizes) <= 3 * s


def test_layered_small_example():
    coloring = layered_coloring(2, 3)
    assert coloring.n == 3
    labels = {(u, v): coloring.label_of(coloring.color_of(u, v)) for u in range(3) for v in range(u + 1, 3)}
    assert labels == {(0, 1): 1, (0, 2): 1, (1, 2): 2}


@pytest.mark.parametrize("s, t", [(4, 3), (6, 5), (4, 2)])
def test_layered_colors_at_vertex(s, t):
    coloring = layered_coloring(s, t)
    assert coloring.n == t * (s // 2)
    for v in range(coloring.n):
        seen = {coloring.label_of(c) for c in coloring.multiplicities(v)[0]}
        assert seen == set(range(1, layer_of(s, v) + 1))
    assert max_distinct_colors_at_vertex(coloring) == t


def test_grid_vertex_count_and_property_ii():
    spec = GridConstructionSpec(h=2, t=4, s=6)
    coloring, ss = grid_construction(spec)
    assert coloring.n == 2 * 3 * 2
    assert ss.size == spec.u_size
    assert check_property_ii(ss, coloring) == []
    assert len(ss.rogue_colors) == 3


def test_grid_single_block():
    coloring, ss = grid_construction(GridConstructionSpec(h=1, t=2, s=3))
    assert coloring.n == 1
    assert ss.size == 1
    assert ss.orientation.directed_count() == 0


def test_grid_directed_paths_are_short():
    coloring, ss = grid_construction(GridConstructionSpec(h=3, t=3, s=3))
    dag = ss.orientation.to_networkx()
    assert nx.is_directed_acyclic_graph(dag)
    assert nx.dag_longest_path_length(dag) == 2


def test_grid_connectors_give_property_iii(grid_linking):
    spec, coloring, ss = grid_linking
    assert coloring.n == spec.u_size + spec.connectors
    assert check_property_ii(ss, coloring) == []
    assert check_property_iii(ss, coloring, spec.t) == []
    assert check_property_iii(ss, coloring, spec.t + 1) != []


def test_grid_metadata_sidecar(grid_linking):
    spec, coloring, ss = grid_linking
    meta = grid_metadata(spec, ss)
    assert len(meta.parts) == spec.h * spec.columns
    assert len(meta.arcs) == ss.orientation.directed_count()
    for u, v in meta.arcs[:20]:
        assert coloring.color_of(u, v) == ss.color_of_vertex(u)
