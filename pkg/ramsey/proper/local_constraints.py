"""
Local constraints: vertices that can be cut down to b colors by deleting at
most a edges.

If the coloring has no monochromatic S, at most 2(bs + a) vertices qualify.
mono_from_constrained_set turns a larger set back into a monochromatic S:
after each vertex drops everything outside its b kept classes, some
surviving class is dense enough to peel.

Kept classes are the b largest multiplicities, ties broken by smaller color
id. The deletion count does not depend on the tie-break.
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence

import numpy as np

from ..core.coloring import EdgeColoring
from ..core.graph import graph_from_edges
from ..core.trees import TreeSpec
from ..embedding.mono import embed_first_dense
from ..errors import PreconditionError
from ..models import MonoEmbedding

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeletionProfile:
    vertex: int
    kept: FrozenSet[int]
    deletions: int


def local_constraints_bound(a: int, b: int, s: int) -> int:
    """Largest possible constrained set in a coloring without a mono S."""
    return 2 * (b * s + a)


def deletion_profile(
    coloring: EdgeColoring, v: int, b: int, scope: Optional[np.ndarray] = None
) -> DeletionProfile:
    if b < 0:
        raise PreconditionError(f"b={b} < 0")
    colors, counts = coloring.multiplicities(v, scope)
    order = np.lexsort((colors, -counts))[:b]
    kept = frozenset(int(c) for c in colors[order])
    deletions = int(counts.sum() - counts[order].sum())
    return DeletionProfile(vertex=int(v), kept=kept, deletions=deletions)


def min_deletions_to_b_colors(
    coloring: EdgeColoring, v: int, b: int, scope: Optional[np.ndarray] = None
) -> int:
    """deg(v) minus the b largest color multiplicities at v."""
    return deletion_profile(coloring, v, b, scope).deletions


def local_constraints_set(
    coloring: EdgeColoring,
    a: int,
    b: int,
    scope: Optional[np.ndarray] = None,
) -> np.ndarray:
    """All v in scope with min_deletions_to_b_colors(v, b) <= a, in the scope's graph."""
    if a < 0 or b < 0:
        raise PreconditionError("a and b must be non-negative")
    verts = np.arange(coloring.n) if scope is None else np.asarray(scope, dtype=np.int64)
    hits = [int(v) for v in verts if min_deletions_to_b_colors(coloring, int(v), b, scope) <= a]
    return np.asarray(hits, dtype=np.int64)


def mono_from_constrained_set(
    coloring: EdgeColoring,
    U: Sequence[int],
    S: TreeSpec,
    a: int,
    b: int,
    scope: Optional[np.ndarray] = None,
) -> Optional[MonoEmbedding]:
    U = np.asarray(U, dtype=np.int64)
    if U.size == 0:
        return None
    profiles = [deletion_profile(coloring, int(v), b, scope) for v in U]

    colors = coloring.block(U, U)
    # an edge survives when both ends keep its color
    kept_by_row = np.zeros(colors.shape, dtype=bool)
    for i, profile in enumerate(profiles):
        kept_by_row[i] = np.isin(colors[i], list(profile.kept))
    both = kept_by_row & kept_by_row.T
    iu, ju = np.triu_indices(U.size, 1)
    values = colors[iu, ju]
    keep = both[iu, ju]
    graphs = {}
    for c in np.unique(values[keep]):
        sel = keep & (values == c)
        graphs[int(c)] = graph_from_edges(U.tolist(), zip(U[iu[sel]].tolist(), U[ju[sel]].tolist()))

    surviving = int(keep.sum())
    logger.debug(
        "constrained set |U|=%d: %d of %d edges survive deletion (bound %d)",
        U.size, surviving, values.size, local_constraints_bound(a, b, S.edge_count),
    )
    return embed_first_dense(coloring, S, graphs)
