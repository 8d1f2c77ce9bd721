"""
Path extension along the median order.

After the dyadic step picks l, the paths P_1..P_l (starting at v_1..v_l) are
walked forward until each ends inside S_1, the 8st positions after v_l. The
168st positions after S_1 form S_2, which is packed into bins of whole part
slices. Each retry of the tail step activates bins at random, drops one
vertex of every active bin into a random T_i, keeps the out-neighbours of the
current endpoint w_i outside B, breaks rogue pairs and appends the resulting
tournament as a directed Hamiltonian path.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Set, Union

import numpy as np

from ..config import PipelineConstants
from ..core.coloring import EdgeColoring
from ..errors import InvariantViolation, PreconditionError
from ..models import RainbowPath
from ..ordering.median import tournament_hamiltonian_path
from .linking import link_fragments
from .matching import MatchingState
from .subgraph import StructuredSubgraph

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class ExtensionState:
    ell: int
    window: np.ndarray  # S_1
    region: np.ndarray  # S_2
    paths: List[List[int]]
    bad_parts: Set[int]
    bad_size: int
    bins: List[np.ndarray] = field(default_factory=list)
    retries: int = 0

    def endpoints(self) -> List[int]:
        return [p[-1] for p in self.paths]


def link_extension(
    ss: StructuredSubgraph,
    coloring: EdgeColoring,
    ms: MatchingState,
    paths: Sequence[Sequence[int]],
    t: int,
) -> RainbowPath:
    """Link e_2..e_f with the paths of v_1..v_l and singletons for the later anchors."""
    fragments = [list(p) for p in paths] + [[a] for a in ms.anchors[len(paths):]]
    return link_fragments(ss, coloring, ms.edges, fragments, t)


def extend_paths_to_S1(
    ms: MatchingState,
    ell: int,
    ss: StructuredSubgraph,
    coloring: EdgeColoring,
    s: int,
    t: int,
    constants: Optional[PipelineConstants] = None,
) -> Union[ExtensionState, RainbowPath]:
    constants = constants or PipelineConstants.default()
    if not 1 <= ell <= ms.f:
        raise PreconditionError(f"l={ell} outside 1..{ms.f}")
    width = constants.window_factor * s * t
    start = ms.anchor_position(ell) + 1
    order = ms.order
    es = ExtensionState(
        ell=ell,
        window=order[start:start + width],
        region=order[start + width:start + width + constants.bin_region_factor * s * t],
        paths=[[a] for a in ms.anchors[:ell]],
        bad_parts=set(ms.bad_parts),
        bad_size=ms.bad_size,
    )
    g = ss.orientation
    local = g.local(order)
    part = ss.part_of[order]
    sizes = np.array([p.size for p in ss.parts], dtype=np.int64)
    overflow = constants.overflow_factor * s * t

    for path in es.paths:
        while ms.position[path[-1]] < start:
            p = ms.position[path[-1]]
            ahead = slice(p + 1, p + 1 + width)
            blocked = np.fromiter(es.bad_parts, dtype=np.int64)
            hits = np.flatnonzero((g.arcs[local[p], local[ahead]] == 1) & ~np.isin(part[ahead], blocked))
            if hits.size == 0:
                raise InvariantViolation("extend", f"no forward vertex outside B within {width} of {path[-1]}")
            # furthest candidate
            q = p + 1 + int(hits[-1])
            path.append(int(order[q]))
            es.bad_parts.add(int(part[q]))
            es.bad_size += int(sizes[part[q]])
            if es.bad_size >= overflow:
                logger.info("extension overflow: |B|=%d >= %d, linking current paths", es.bad_size, overflow)
                return link_extension(ss, coloring, ms, es.paths, t)

    logger.info("paths P_1..P_%d reach S_1, |B|=%d", ell, es.bad_size)
    return es


def build_bins(region: np.ndarray, ss: StructuredSubgraph, s: int) -> List[np.ndarray]:
    """
    Pack the part slices of region into bins of 2s to 4s-1 vertices, slices
    taken in order of first appearance. The last underfull bin is dropped.
    """
    region = np.asarray(region, dtype=np.int64)
    part = ss.part_of[region]
    _, first = np.unique(part, return_index=True)
    bins: List[np.ndarray] = []
    current: List[np.ndarray] = []
    size = 0
    for p in part[np.sort(first)]:
        piece = region[part == p]
        current.append(piece)
        size += piece.size
        if size >= 2 * s:
            bins.append(np.concatenate(current))
            current, size = [], 0
    if size:
        logger.debug("dropped an underfull bin of %d vertices", size)
    return bins


def break_rogue_pairs(ss: StructuredSubgraph, vertices: List[int]) -> List[int]:
    kept: List[int] = []
    for x in vertices:
        if not any(ss.orientation.is_undirected(x, y) for y in kept):
            kept.append(x)
    return kept


def randomized_tail_extension(
    es: ExtensionState,
    ss: StructuredSubgraph,
    s: int,
    t: int,
    seed: int,
    max_retries: Optional[int] = None,
    constants: Optional[PipelineConstants] = None,
) -> Optional[List[List[int]]]:
    """Extended copies of es.paths adding at least t vertices, or None."""
    constants = constants or PipelineConstants.default()
    if max_retries is None:
        max_retries = constants.default_retries(t)
    if not es.bins:
        es.bins = build_bins(es.region, ss, s)
    if not es.bins:
        logger.info("S_2 holds no full bin")
        return None

    rng = np.random.default_rng(seed)
    ends = es.endpoints()
    for attempt in range(1, max_retries + 1):
        es.retries = attempt
        sets: List[List[int]] = [[] for _ in range(es.ell)]
        for b in es.bins:
            if rng.random() < constants.activation_probability:
                v = int(rng.choice(b))
                sets[int(rng.integers(es.ell))].append(v)

        extended, added = [], 0
        for w, path, T in zip(ends, es.paths, sets):
            filtered = [x for x in T if int(ss.part_of[x]) not in es.bad_parts and ss.orientation.has_arc(w, x)]
            core = break_rogue_pairs(ss, filtered)
            tail = tournament_hamiltonian_path(ss.orientation.restrict(core), int(rng.integers(2**32))) if core else []
            extended.append(path + tail)
            added += len(tail)
        logger.debug("tail retry %d: %d vertices added", attempt, added)
        if added >= t:
            logger.info("tail extension accepted after %d retries (%d added)", attempt, added)
            return extended

    logger.info("tail extension failed after %d retries", max_retries)
    return None
