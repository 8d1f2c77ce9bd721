"""
Structured subgraph construction.

1. V_1: t-robust vertices (keep >= n/5 edges after removing any t colors)
2. P: rainbow path from a vertex of V_1, closed under 1-, 2- and 3-edge
   extensions vw, vxz, vxyz that end back in V_1; R = colors of P
3. B: vertices with >= n/15 rogue edges
4. U_i: anchor's c_i-neighbours outside B and P, one part per non-rogue
   color c_i at the anchor
5. Orient cross-part pairs, then delete vertices until (ii) and (iii) hold

Each step that the counting arguments rule out for S-free colorings is
turned into a monochromatic embedding of S when it happens.
"""
import logging
import math
from typing import FrozenSet, List, Optional, Tuple, Union

import numpy as np

from ..config import EXHAUSTIVE_PAIR_LIMIT, SAMPLED_PAIR_COUNT, PipelineConstants
from ..core.coloring import EdgeColoring
from ..core.trees import TreeSpec
from ..embedding.mono import mono_from_dense_color_class
from ..errors import PreconditionError
from ..models import Failure, MonoEmbedding, PipelineTrace, RainbowPath
from ..proper.local_constraints import local_constraints_bound, mono_from_constrained_set
from .subgraph import StructuredSubgraph, connector_counts, connector_matrix, orient_parts

logger = logging.getLogger(__name__)

SAMPLED_REPAIR_ROUNDS = 64


def robust_vertices(coloring: EdgeColoring, t: int, threshold: Optional[int] = None) -> np.ndarray:
    """v with (n-1) minus its t largest color multiplicities >= threshold."""
    n = coloring.n
    if threshold is None:
        threshold = math.ceil(n / PipelineConstants().robust_divisor)
    keep = []
    for v in range(n):
        _, counts = coloring.multiplicities(v)
        if counts.size > t:
            top = np.partition(counts, counts.size - t)[counts.size - t:].sum()
        else:
            top = counts.sum()
        if (n - 1) - int(top) >= threshold:
            keep.append(v)
    return np.asarray(keep, dtype=np.int64)


def _good_colors(coloring: EdgeColoring, targets: np.ndarray, rogue: np.ndarray) -> np.ndarray:
    """Up to 3 distinct non-rogue colors from each vertex into targets (-1 padded)."""
    n = coloring.n
    good = np.full((n, 3), -1, dtype=np.int64)
    for y in range(n):
        row = coloring.row(y)
        values = row[targets & (row >= 0)]
        values = np.unique(values[~np.isin(values, rogue)])[:3]
        good[y, :values.size] = values
    return good


def _first_target(coloring: EdgeColoring, y: int, targets: np.ndarray, rogue: np.ndarray, avoid) -> Optional[int]:
    row = coloring.row(y)
    mask = targets & (row >= 0) & ~np.isin(row, rogue)
    for c in avoid:
        mask &= row != c
    hits = np.flatnonzero(mask)
    return int(hits[0]) if hits.size else None


def find_extension(
    coloring: EdgeColoring, path: List[int], in_v1: np.ndarray, rogue_colors
) -> Optional[List[int]]:
    """
    Shortest rainbow extension at path[-1] with new colors outside R that
    ends in V_1 minus the path; lowest vertex ids win ties.
    """
    n = coloring.n
    rogue = np.fromiter(rogue_colors, dtype=np.int64)
    on_path = np.zeros(n, dtype=bool)
    on_path[path] = True
    free = ~on_path
    targets = in_v1 & free

    v = path[-1]
    rv = coloring.row(v)
    usable = free & (rv >= 0) & ~np.isin(rv, rogue)

    # vw
    hits = np.flatnonzero(usable & targets)
    if hits.size:
        return [int(hits[0])]

    xs = np.flatnonzero(usable)
    if xs.size == 0:
        return None
    good = _good_colors(coloring, targets, rogue)

    # vxz
    c1 = rv[xs]
    ok = ((good[xs] >= 0) & (good[xs] != c1[:, None])).any(axis=1)
    if ok.any():
        x = int(xs[np.argmax(ok)])
        z = _first_target(coloring, x, targets, rogue, [int(rv[x])])
        return [x, z]

    # vxyz
    for x in xs:
        x = int(x)
        c1 = int(rv[x])
        rx = coloring.row(x)
        ymask = free & (rx >= 0) & ~np.isin(rx, rogue) & (rx != c1)
        ys = np.flatnonzero(ymask)
        if ys.size == 0:
            continue
        c2 = rx[ys]
        gy = good[ys]
        ok = ((gy >= 0) & (gy != c1) & (gy != c2[:, None])).any(axis=1)
        if ok.any():
            y = int(ys[np.argmax(ok)])
            z = _first_target(coloring, y, targets, rogue, [c1, int(rx[y])])
            return [x, y, z]
    return None


def grow_anchored_rainbow_path(
    coloring: EdgeColoring, V_1: np.ndarray, t: int
) -> Union[Tuple[List[int], FrozenSet[int]], RainbowPath]:
    if len(V_1) == 0:
        raise PreconditionError("no robust vertex to anchor the path")
    in_v1 = np.zeros(coloring.n, dtype=bool)
    in_v1[np.asarray(V_1, dtype=np.int64)] = True

    path = [int(np.min(V_1))]
    rogue: set = set()
    while True:
        if len(path) - 1 >= t:
            logger.info("anchored path reached %d edges", len(path) - 1)
            return RainbowPath(path=path)
        step = find_extension(coloring, path, in_v1, rogue)
        if step is None:
            break
        for w in step:
            rogue.add(coloring.color_of(path[-1], w))
            path.append(w)
    logger.info("anchored path closed at %d edges", len(path) - 1)
    return path, frozenset(rogue)


def rogue_degrees(coloring: EdgeColoring, rogue_colors, vertices: Optional[np.ndarray] = None, scope: Optional[np.ndarray] = None) -> np.ndarray:
    """Number of rogue-colored edges at each vertex, into scope."""
    rogue = np.fromiter(rogue_colors, dtype=np.int64)
    vertices = np.arange(coloring.n) if vertices is None else np.asarray(vertices, dtype=np.int64)
    out = np.zeros(vertices.size, dtype=np.int64)
    if rogue.size == 0:
        return out
    for i, v in enumerate(vertices):
        row = coloring.row(int(v))
        if scope is not None:
            row = row[scope]
        out[i] = np.count_nonzero(np.isin(row, rogue))
    return out


def _repair_orientation(violations: np.ndarray) -> np.ndarray:
    """Local indices to delete so no cross-part pair is left unexplained."""
    bad = violations.copy()
    counts = bad.sum(axis=1)
    removed = []
    while counts.any():
        i = int(np.argmax(counts))
        removed.append(i)
        bad[i, :] = False
        bad[:, i] = False
        counts = bad.sum(axis=1)
    return np.asarray(removed, dtype=np.int64)


def _repair_connectors(
    coloring: EdgeColoring,
    ss: StructuredSubgraph,
    t: int,
    seed: int,
    exhaustive_limit: int = EXHAUSTIVE_PAIR_LIMIT,
    rounds: int = SAMPLED_REPAIR_ROUNDS,
) -> Optional[List[int]]:
    """
    Vertices (global ids) to drop from U until every pair has t connectors.

    Above exhaustive_limit each round samples pairs and drops the vertex in
    the most short pairs. None means a sample still came back short after
    the last round.
    """
    removed: List[int] = []
    if ss.size == 0:
        return removed
    if ss.size <= exhaustive_limit:
        U = ss.vertices.copy()
        pc = ss.part_color_array()
        X, _ = connector_matrix(ss, coloring)
        counts = connector_counts(X)
        while U.size:
            short = counts < t
            load = short.sum(axis=1)
            if not load.any():
                break
            i = int(np.argmax(load))
            x = int(U[i])
            # x leaves U and becomes a connector for everyone else
            col = coloring.row(x)[U] == pc
            col[i] = False
            counts += np.outer(col, col).astype(np.int64)
            keep = np.arange(U.size) != i
            counts = counts[np.ix_(keep, keep)]
            U, pc = U[keep], pc[keep]
            removed.append(x)
        return removed

    rng = np.random.default_rng(seed)
    current = ss
    for _ in range(rounds + 1):
        if current.size == 0:
            return removed
        X, _ = connector_matrix(current, coloring)
        i = rng.integers(0, current.size, size=SAMPLED_PAIR_COUNT)
        j = rng.integers(0, current.size, size=SAMPLED_PAIR_COUNT)
        short = np.count_nonzero(X[i] & X[j], axis=1) < t
        if not short.any():
            return removed
        if len(removed) == rounds:
            break
        hits = np.bincount(np.concatenate((i[short], j[short])), minlength=current.size)
        x = int(current.vertices[int(np.argmax(hits))])
        removed.append(x)
        current = without_vertices(current, [x])
    logger.warning("connector repair left short pairs after %d deletions from |U|=%d", rounds, ss.size)
    return None


def without_vertices(ss: StructuredSubgraph, drop) -> StructuredSubgraph:
    drop = np.asarray(sorted(set(int(v) for v in drop)), dtype=np.int64)
    if drop.size == 0:
        return ss
    parts, colors = [], []
    for part, color in zip(ss.parts, ss.part_colors):
        kept = np.setdiff1d(part, drop)
        if kept.size:
            parts.append(kept)
            colors.append(color)
    remaining = np.setdiff1d(ss.vertices, drop)
    return StructuredSubgraph(
        n=ss.n,
        parts=parts,
        part_colors=colors,
        rogue_colors=ss.rogue_colors,
        orientation=ss.orientation.restrict(remaining),
        anchor=ss.anchor,
        path=ss.path,
        connector_scope=ss.connector_scope,
        bad_set_lemma2=ss.bad_set_lemma2,
        pruned=ss.pruned,
    )


def build_structured_subgraph(
    coloring: EdgeColoring,
    S: TreeSpec,
    t: int,
    constants: Optional[PipelineConstants] = None,
    seed: int = 0,
    trace: Optional[PipelineTrace] = None,
) -> Union[StructuredSubgraph, MonoEmbedding, RainbowPath, Failure]:
    constants = constants or PipelineConstants.default()
    n, s = coloring.n, S.edge_count

    # Step 1: robust vertices, or a mono S from the non-robust ones
    threshold = math.ceil(n / constants.robust_divisor)
    V_1 = robust_vertices(coloring, t, threshold)
    if trace is not None:
        trace.robust_count = int(V_1.size)
    non_robust = np.setdiff1d(np.arange(n), V_1)
    bound = local_constraints_bound(threshold - 1, t, s)
    if non_robust.size > bound:
        cert = mono_from_constrained_set(coloring, non_robust, S, threshold - 1, t)
        if cert is not None:
            _branch(trace, "local-constraints")
            return cert
    if V_1.size == 0:
        return Failure(stage="robust", reason=f"no {t}-robust vertex at threshold {threshold}")

    # Step 2: closed anchored rainbow path
    grown = grow_anchored_rainbow_path(coloring, V_1, t)
    if isinstance(grown, RainbowPath):
        _branch(trace, "anchored-path")
        return grown
    path, rogue = grown
    if trace is not None:
        trace.path_length = len(path) - 1
        trace.rogue_count = len(rogue)

    # Step 3: bad vertices carry many rogue edges
    rogue_deg = rogue_degrees(coloring, rogue)
    bad = np.flatnonzero(rogue_deg >= math.ceil(n / constants.bad_divisor))
    if trace is not None:
        trace.bad_count = int(bad.size)
    if bad.size >= constants.bad_factor * s * t:
        cert = mono_from_dense_color_class(coloring, S, rogue)
        if cert is not None:
            _branch(trace, "rogue-density")
            return cert
        logger.warning("|B|=%d >= %d but no rogue class is dense", bad.size, constants.bad_factor * s * t)

    # Step 4: parts from the anchor's non-rogue neighbourhoods
    anchor = path[-1]
    excluded = np.zeros(n, dtype=bool)
    excluded[bad] = True
    excluded[path] = True
    ra = coloring.row(anchor)
    part_colors = [int(c) for c in np.unique(ra[(ra >= 0) & ~excluded]) if int(c) not in rogue]
    parts = [np.flatnonzero((ra == c) & ~excluded) for c in part_colors]
    if not parts:
        return Failure(stage="lemma2", reason=f"anchor {anchor} has no non-rogue neighbour outside B and P")

    in_v1 = np.zeros(n, dtype=bool)
    in_v1[V_1] = True
    cap = constants.part_factor * s
    for i, (part, color) in enumerate(zip(parts, part_colors)):
        if part.size < cap:
            continue
        scope = np.union1d(part[:cap], V_1)
        cert = mono_from_dense_color_class(coloring, S, [color], scope)
        if cert is not None:
            _branch(trace, "large-part")
            return cert
        logger.warning("part of color %d has %d >= %d vertices; truncating", color, part.size, cap)
        parts[i] = part[:cap - 1]

    # Step 5: orientation, then repairs for (ii) and (iii)
    orientation, violations = orient_parts(coloring, parts, part_colors, rogue)
    ss = StructuredSubgraph(
        n=n,
        parts=parts,
        part_colors=part_colors,
        rogue_colors=rogue,
        orientation=orientation,
        anchor=anchor,
        path=path,
        connector_scope=np.setdiff1d(V_1, path),
        bad_set_lemma2=bad,
    )
    drop_ii = orientation.vertices[_repair_orientation(violations)]
    if drop_ii.size:
        logger.warning("removed %d vertices violating the part-color orientation", drop_ii.size)
    ss = without_vertices(ss, drop_ii)
    drop_iii = _repair_connectors(coloring, ss, t, seed)
    if drop_iii is None:
        return Failure(stage="lemma2", reason=f"property (iii) still fails after {SAMPLED_REPAIR_ROUNDS} connector repairs")
    if drop_iii:
        logger.warning("removed %d vertices short of %d connectors", len(drop_iii), t)
    ss = without_vertices(ss, drop_iii)

    if trace is not None:
        trace.u_size = ss.size
        trace.part_count = len(ss.parts)
        trace.repair_deletions = int(drop_ii.size + len(drop_iii))
    if ss.size == 0:
        return Failure(stage="lemma2", reason="structured subgraph is empty after repair")
    logger.info("structured subgraph: |U|=%d parts=%d |R|=%d", ss.size, len(ss.parts), len(rogue))
    return ss


def _branch(trace: Optional[PipelineTrace], name: str) -> None:
    logger.info("structured subgraph short-circuit: %s", name)
    if trace is not None:
        trace.branch = name
