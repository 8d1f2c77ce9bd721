"""
Linking fragments into one rainbow path.

Given rogue edges u_i v_i (distinct rogue colors) and directed paths P_0..P_r
with P_i starting at v_i, join the end w_i of P_i to u_{i+1} through a
connector x_i outside U with color(w_i x_i) = c(w_i) and
color(x_i u_{i+1}) = c(u_{i+1}). Every directed edge takes the color of its
source part, connectors only add part colors, and all parts touched are
distinct, so the result is rainbow.
"""
import logging
from typing import List, Sequence, Tuple

import numpy as np

from ..core.coloring import EdgeColoring
from ..core.verify import check_certificate
from ..errors import InvariantViolation, PreconditionError
from ..models import RainbowPath
from .subgraph import StructuredSubgraph

logger = logging.getLogger(__name__)


def check_fragments(
    ss: StructuredSubgraph,
    coloring: EdgeColoring,
    matching: Sequence[Tuple[int, int]],
    paths: Sequence[Sequence[int]],
    t: int,
) -> None:
    """Raise PreconditionError unless the fragments satisfy the linking hypotheses."""
    r = len(matching)
    if r >= t:
        raise PreconditionError(f"{r} rogue edges, need fewer than t={t}")
    if len(paths) != r + 1:
        raise PreconditionError(f"{r} rogue edges need {r + 1} paths, got {len(paths)}")
    if any(len(p) == 0 for p in paths):
        raise PreconditionError("empty fragment path")
    if r == 0 and len(paths[0]) < 2:
        raise PreconditionError("fragments span no edge")

    touched = [u for u, _ in matching] + [v for p in paths for v in p]
    if any(ss.part_of[v] < 0 for v in touched):
        raise PreconditionError("fragment vertex outside U")
    parts = ss.part_of[np.asarray(touched, dtype=np.int64)]
    if np.unique(parts).size != parts.size:
        raise PreconditionError("two fragment vertices share a part")

    colors = set()
    for i, (u, v) in enumerate(matching):
        if paths[i + 1][0] != v:
            raise PreconditionError(f"path {i + 1} does not start at v_{i + 1}={v}")
        c = coloring.color_of(u, v)
        if c not in ss.rogue_colors or c in colors:
            raise PreconditionError(f"edge ({u}, {v}) is not a fresh rogue color")
        colors.add(c)
    for p in paths:
        for a, b in zip(p, p[1:]):
            if not ss.orientation.has_arc(a, b):
                raise PreconditionError(f"({a}, {b}) is not a directed edge")


def link_fragments(
    ss: StructuredSubgraph,
    coloring: EdgeColoring,
    matching: Sequence[Tuple[int, int]],
    paths: Sequence[Sequence[int]],
    t: int,
) -> RainbowPath:
    check_fragments(ss, coloring, matching, paths, t)

    free = ss.part_of < 0
    for p in paths:
        free[list(p)] = False
    linked: List[int] = list(paths[0])
    for i, (u, _) in enumerate(matching):
        w = linked[-1]
        hits = np.flatnonzero(
            free
            & (coloring.row(w) == ss.color_of_vertex(w))
            & (coloring.row(u) == ss.color_of_vertex(u))
        )
        if hits.size == 0:
            raise InvariantViolation("link", f"no connector between {w} and {u}")
        x = int(hits[0])
        free[x] = False
        linked.extend([x, u])
        linked.extend(paths[i + 1])

    cert = RainbowPath(path=linked)
    verdict = check_certificate(coloring, None, None, cert)
    if not verdict.ok:
        raise InvariantViolation("link", f"linked path rejected: {verdict.reason}")
    logger.debug("linked %d fragments into %d edges", len(paths), cert.length)
    return cert
