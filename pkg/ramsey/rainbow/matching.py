"""
Rogue pruning, greedy rogue matching and dyadic gap selection.

1. Drop vertices of U with rogue degree >= 4st (cross-part pairs only)
2. Scan the median order: each vertex outside B with a rogue edge of a fresh
   color to another vertex outside B becomes the next anchor v_k, and both
   endpoint parts join B
3. Among v_1, v_2, v_4, ... (later indices alias the final vertex) pick the
   first l whose gap to v_2l is at least 176st
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple, Union

import numpy as np

from ..config import PipelineConstants
from ..core.coloring import EdgeColoring
from ..core.trees import TreeSpec
from ..embedding.mono import mono_from_dense_color_class
from ..errors import PreconditionError
from ..models import MonoEmbedding, RainbowPath
from ..ordering.median import MedianOrdering
from .linking import link_fragments
from .structured import without_vertices
from .subgraph import StructuredSubgraph

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class MatchingState:
    """
    order: vertex ids of the pruned U along the median order.
    edges[k] = (u, v) joins anchors[k + 1] = v to u with color colors[k].
    bad_parts holds the part indices in B; bad_size is |B| in vertices.
    """

    order: np.ndarray
    anchors: List[int]
    edges: List[Tuple[int, int]] = field(default_factory=list)
    colors: List[int] = field(default_factory=list)
    bad_parts: Set[int] = field(default_factory=set)
    bad_size: int = 0

    def __post_init__(self):
        self.position = {int(v): i for i, v in enumerate(self.order)}

    @property
    def f(self) -> int:
        return len(self.anchors)

    def anchor_position(self, i: int) -> int:
        """Position of v_i (1-based); indices past f alias the final vertex."""
        if i <= self.f:
            return self.position[self.anchors[i - 1]]
        return len(self.order) - 1


def rogue_degree_in_u(ss: StructuredSubgraph) -> np.ndarray:
    """Cross-part rogue degree of each vertex of U, in local order."""
    return ss.orientation.undirected.sum(axis=1).astype(np.int64)


def prune_rogue_degrees(
    ss: StructuredSubgraph,
    coloring: EdgeColoring,
    S: TreeSpec,
    t: int,
    constants: Optional[PipelineConstants] = None,
) -> Union[StructuredSubgraph, MonoEmbedding]:
    constants = constants or PipelineConstants.default()
    s = S.edge_count
    cap = constants.rogue_cap_factor * s * t
    degrees = rogue_degree_in_u(ss)
    drop = ss.vertices[degrees >= cap]
    if drop.size == 0:
        return _mark_pruned(ss)

    if 2 * drop.size > ss.size:
        cert = mono_from_dense_color_class(coloring, S, ss.rogue_colors, ss.vertices)
        if cert is not None:
            logger.info("pruning would remove %d of %d vertices; rogue class is dense", drop.size, ss.size)
            return cert
        logger.warning("pruning removes %d of %d vertices without a dense rogue class", drop.size, ss.size)

    logger.debug("pruned %d vertices of rogue degree >= %d", drop.size, cap)
    return _mark_pruned(without_vertices(ss, drop))


def _mark_pruned(ss: StructuredSubgraph) -> StructuredSubgraph:
    ss.pruned = True
    return ss


def _overflow(ms: MatchingState, s: int, t: int, constants: PipelineConstants) -> bool:
    if ms.bad_size >= constants.overflow_factor * s * t:
        return True
    # linking singletons gives 3 edges per rogue edge
    return 3 * len(ms.edges) >= t


def greedy_rogue_matching(
    ss: StructuredSubgraph,
    coloring: EdgeColoring,
    sigma: MedianOrdering,
    s: int,
    t: int,
    constants: Optional[PipelineConstants] = None,
) -> Union[MatchingState, RainbowPath]:
    constants = constants or PipelineConstants.default()
    order = np.asarray(sigma.order, dtype=np.int64)
    if order.size == 0:
        raise PreconditionError("median order is empty")

    g = ss.orientation
    local = g.local(order)
    part = ss.part_of[order]
    sizes = np.array([p.size for p in ss.parts], dtype=np.int64)
    rogue = np.fromiter(ss.rogue_colors, dtype=np.int64)

    first = int(part[0])
    ms = MatchingState(order=order, anchors=[int(order[0])], bad_parts={first}, bad_size=int(sizes[first]))
    used = np.zeros(0, dtype=np.int64)

    for i in range(1, order.size):
        if int(part[i]) in ms.bad_parts:
            continue
        row = coloring.row(int(order[i]))[order]
        blocked = np.fromiter(ms.bad_parts, dtype=np.int64)
        candidates = (
            g.undirected[local[i], local]
            & ~np.isin(part, blocked)
            & np.isin(row, rogue)
            & ~np.isin(row, used)
        )
        hits = np.flatnonzero(candidates)
        if hits.size == 0:
            continue
        j = int(hits[0])
        u, v = int(order[j]), int(order[i])
        color = int(row[j])
        ms.anchors.append(v)
        ms.edges.append((u, v))
        ms.colors.append(color)
        used = np.append(used, color)
        for p in (int(part[i]), int(part[j])):
            ms.bad_parts.add(p)
            ms.bad_size += int(sizes[p])
        logger.debug("matched v_%d=%d to %d in rogue color %d, |B|=%d", ms.f, v, u, color, ms.bad_size)

        if _overflow(ms, s, t, constants):
            logger.info("matching overflow at f=%d, |B|=%d; linking singletons", ms.f, ms.bad_size)
            return link_fragments(ss, coloring, ms.edges, [[a] for a in ms.anchors], t)

    logger.info("greedy matching: f=%d |B|=%d", ms.f, ms.bad_size)
    return ms


def dyadic_gap_select(
    ms: MatchingState,
    s: int,
    t: int,
    constants: Optional[PipelineConstants] = None,
) -> Optional[int]:
    constants = constants or PipelineConstants.default()
    if 2 * ms.f > t:
        raise PreconditionError(f"f={ms.f} exceeds t/2 for t={t}")
    need = constants.gap_factor * s * t
    ell = 1
    while ell <= ms.f:
        gap = ms.anchor_position(2 * ell) - ms.anchor_position(ell) - 1
        if gap >= need:
            logger.info("dyadic gap: l=%d gap=%d >= %d", ell, gap, need)
            return ell
        ell *= 2
    logger.info("no dyadic pair has a gap of %d", need)
    return None
