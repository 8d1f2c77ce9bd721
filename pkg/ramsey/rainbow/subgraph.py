"""
StructuredSubgraph and its structural checkers.

The object is a partition U = U_1 + ... + U_r with distinct part colors c_i
outside the rogue set R, plus the orientation of cross-part pairs:

    (ii)  x -> y (x in U_i) has color c_i, every undirected cross-part pair
          has a rogue color
    (iii) every x in U_i, y in U_j has at least t connectors z outside U with
          color(xz) = c_i and color(yz) = c_j

Both checkers return the violating pairs as global vertex ids; an empty list
means the property holds.
"""
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from ..config import EXHAUSTIVE_PAIR_LIMIT, SAMPLED_PAIR_COUNT
from ..core.coloring import EdgeColoring
from ..ordering.orientation import PartialOrientation

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class StructuredSubgraph:
    n: int
    parts: List[np.ndarray]
    part_colors: List[int]
    rogue_colors: FrozenSet[int]
    orientation: PartialOrientation
    anchor: Optional[int] = None
    path: List[int] = field(default_factory=list)
    connector_scope: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    bad_set_lemma2: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    pruned: bool = False

    def __post_init__(self):
        self.part_of = np.full(self.n, -1, dtype=np.int64)
        for i, part in enumerate(self.parts):
            self.part_of[part] = i

    @property
    def vertices(self) -> np.ndarray:
        return self.orientation.vertices

    @property
    def size(self) -> int:
        return int(self.orientation.size)

    def in_u(self) -> np.ndarray:
        return self.part_of >= 0

    def color_of_vertex(self, v: int) -> int:
        """c(v): the color of the part containing v."""
        return self.part_colors[int(self.part_of[v])]

    def part_color_array(self) -> np.ndarray:
        """c(v) for each vertex of the orientation, in its local order."""
        pc = np.asarray(self.part_colors, dtype=np.int64)
        return pc[self.part_of[self.vertices]]

    def outside(self) -> np.ndarray:
        """Candidate connectors: every vertex not in U."""
        return np.flatnonzero(self.part_of < 0)


def orient_parts(
    coloring: EdgeColoring,
    parts: Sequence[np.ndarray],
    part_colors: Sequence[int],
    rogue_colors,
) -> Tuple[PartialOrientation, np.ndarray]:
    """
    Orient cross-part pairs of U by their colors.

    Returns the orientation over U (sorted by vertex id) and the boolean
    matrix of cross-part pairs that are neither a part color nor rogue.
    """
    vertices = np.sort(np.concatenate([np.asarray(p, dtype=np.int64) for p in parts])) if parts else np.zeros(0, dtype=np.int64)
    owner = np.empty(coloring.n, dtype=np.int64)
    for i, part in enumerate(parts):
        owner[np.asarray(part, dtype=np.int64)] = i
    pid = owner[vertices]
    pc = np.asarray(part_colors, dtype=np.int64)[pid]

    colors = coloring.block(vertices, vertices)
    cross = pid[:, None] != pid[None, :]
    forward = (colors == pc[:, None]) & cross
    backward = (colors == pc[None, :]) & cross
    rogue = np.isin(colors, np.fromiter(rogue_colors, dtype=np.int64)) & cross
    arcs = forward.astype(np.int8) - backward.astype(np.int8)
    violations = cross & ~forward & ~backward & ~rogue
    return PartialOrientation(vertices=vertices, arcs=arcs, undirected=rogue), violations


def check_property_ii(ss: StructuredSubgraph, coloring: EdgeColoring) -> List[Tuple[int, int]]:
    g = ss.orientation
    pid = ss.part_of[g.vertices]
    pc = ss.part_color_array()
    colors = coloring.block(g.vertices, g.vertices)
    cross = pid[:, None] != pid[None, :]
    rogue = np.isin(colors, np.fromiter(ss.rogue_colors, dtype=np.int64))

    bad = np.zeros_like(cross)
    bad |= (g.arcs == 1) & (colors != pc[:, None])
    bad |= g.undirected & ~rogue
    bad |= cross & (g.arcs == 0) & ~g.undirected
    i, j = np.nonzero(np.triu(bad | bad.T, 1))
    return list(zip(g.vertices[i].tolist(), g.vertices[j].tolist()))


def connector_matrix(ss: StructuredSubgraph, coloring: EdgeColoring, scope: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    X[x, z] = color(x, z) == c(x) for x in U (local order) and z outside U.

    Returns (X, z ids).
    """
    z = ss.outside() if scope is None else np.asarray(scope, dtype=np.int64)
    pc = ss.part_color_array()
    X = np.zeros((ss.size, z.size), dtype=bool)
    for i, x in enumerate(ss.vertices):
        X[i] = coloring.row(int(x))[z] == pc[i]
    return X, z


def connector_counts(X: np.ndarray) -> np.ndarray:
    """Common-connector count for every pair of U (diagonal: the vertex alone)."""
    Xf = X.astype(np.float32)
    return np.rint(Xf @ Xf.T).astype(np.int64)


def check_property_iii(
    ss: StructuredSubgraph,
    coloring: EdgeColoring,
    t: int,
    exhaustive_limit: int = EXHAUSTIVE_PAIR_LIMIT,
    samples: int = SAMPLED_PAIR_COUNT,
    seed: int = 0,
) -> List[Tuple[int, int]]:
    if ss.size == 0:
        return []
    X, _ = connector_matrix(ss, coloring)
    verts = ss.vertices
    if ss.size <= exhaustive_limit:
        counts = connector_counts(X)
        i, j = np.nonzero(np.triu(counts < t))
    else:
        rng = np.random.default_rng(seed)
        i = rng.integers(0, ss.size, size=samples)
        j = rng.integers(0, ss.size, size=samples)
        counts = np.count_nonzero(X[i] & X[j], axis=1)
        keep = counts < t
        i, j = i[keep], j[keep]
        logger.debug("property (iii) sampled %d pairs, %d short", samples, int(keep.sum()))
    return sorted(set(zip(verts[i].tolist(), verts[j].tolist())))
