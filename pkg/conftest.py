import numpy as np
import pytest

from ramsey.constructions.affine import affine_plane_coloring
from ramsey.constructions.grid import GridConstructionSpec, grid_construction
from ramsey.core.coloring import EdgeColoring
from ramsey.core.trees import path_tree, star_tree
from ramsey.rainbow.subgraph import StructuredSubgraph, orient_parts


def transitive_instance(n: int):
    """
    Coloring with color(i, j) = min(i, j): every vertex is its own part and
    every pair points from the smaller vertex to the larger one.
    """
    idx = np.arange(n)
    coloring = EdgeColoring.from_matrix(np.minimum.outer(idx, idx))
    parts = [np.array([i], dtype=np.int64) for i in range(n)]
    # dense ids equal labels 0..n-2; vertex n-1 never colors an edge
    part_colors = list(range(n))
    orientation, violations = orient_parts(coloring, parts, part_colors, frozenset())
    assert not violations.any()
    ss = StructuredSubgraph(n=n, parts=parts, part_colors=part_colors, rogue_colors=frozenset(), orientation=orientation)
    return coloring, ss


@pytest.fixture
def affine3():
    return affine_plane_coloring(3)


@pytest.fixture
def affine5():
    return affine_plane_coloring(5)


@pytest.fixture
def path3():
    return path_tree(3)


@pytest.fixture
def star3():
    return star_tree(3)


@pytest.fixture
def grid_linking():
    """h=4, t=5, s=6 grid with t connectors, so linking hypotheses hold."""
    spec = GridConstructionSpec(h=4, t=5, s=6, connectors=5)
    coloring, ss = grid_construction(spec)
    return spec, coloring, ss


@pytest.fixture(scope="module")
def transitive_small():
    return transitive_instance(400)
