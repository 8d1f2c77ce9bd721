"""
Grid construction: a structured subgraph whose orientation has no directed
path longer than h, although long rainbow paths exist through rogue edges.

Parts U_{i,j} (row i < h, column j < t-1) each hold max(s//3, 1) vertices.

    rows i < i'          -> directed U_{i,*} -> U_{i',*}, color of the source part
    same row, cols j < j' -> rogue color r_j
    inside U_{i,j}        -> rogue color r_j

With connectors=c, c extra vertices z are appended outside U with
color(z, x) = c(part of x) and one shared color among themselves, so each
pair of U has c common connectors.
"""
import logging
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..core.coloring import EdgeColoring, densify, pair_count, row_offsets
from ..errors import PreconditionError
from ..rainbow.subgraph import StructuredSubgraph, orient_parts

logger = logging.getLogger(__name__)


class GridConstructionSpec(BaseModel):
    h: int = Field(..., ge=1)
    t: int = Field(..., ge=2)
    s: int = Field(..., ge=3)
    connectors: int = Field(0, ge=0)

    @property
    def block_size(self) -> int:
        return max(self.s // 3, 1)

    @property
    def columns(self) -> int:
        return self.t - 1

    @property
    def u_size(self) -> int:
        return self.h * self.columns * self.block_size


def grid_construction(spec: GridConstructionSpec) -> Tuple[EdgeColoring, StructuredSubgraph]:
    h, cols, b = spec.h, spec.columns, spec.block_size
    u_size = spec.u_size
    n = u_size + spec.connectors
    if n < 1:
        raise PreconditionError("grid construction is empty")

    # raw labels: rogue r_j = j, part p gets cols + p, connector clique gets the next one
    part_count = h * cols
    verts = np.arange(n, dtype=np.int64)
    part = np.where(verts < u_size, verts // b, -1)
    row = np.where(part >= 0, part // cols, -1)
    col = np.where(part >= 0, part % cols, -1)
    part_label = cols + part
    connector_label = cols + part_count

    raw = np.empty(pair_count(n), dtype=np.int64)
    offsets = row_offsets(n)
    for u in range(n - 1):
        w = verts[u + 1:]
        if part[u] < 0:
            values = np.full(w.size, connector_label)
        else:
            values = np.where(
                part[w] < 0,
                part_label[u],
                np.where(row[w] == row[u], np.minimum(col[u], col[w]), part_label[u]),
            )
        start = offsets[u] + u + 1
        raw[start:start + w.size] = values

    dense, labels = densify(raw) if raw.size else (np.zeros(0, dtype=np.uint32), np.zeros(0, dtype=np.int64))
    coloring = EdgeColoring(n, dense, labels)

    # dense ids for labels; part colors that never occur get fresh ids past the palette
    lookup = {int(label): i for i, label in enumerate(labels)}
    fresh = iter(range(labels.size, labels.size + part_count + cols + 1))

    def dense_id(label: int) -> int:
        if label not in lookup:
            lookup[label] = next(fresh)
        return lookup[label]

    rogue = frozenset(dense_id(j) for j in range(cols))
    parts = [np.arange(p * b, (p + 1) * b, dtype=np.int64) for p in range(part_count)]
    part_colors = [dense_id(cols + p) for p in range(part_count)]
    orientation, violations = orient_parts(coloring, parts, part_colors, rogue)
    if violations.any():
        raise PreconditionError("grid construction produced an unorientable pair")

    ss = StructuredSubgraph(
        n=n,
        parts=parts,
        part_colors=part_colors,
        rogue_colors=rogue,
        orientation=orientation,
        connector_scope=np.arange(u_size, n, dtype=np.int64),
    )
    logger.debug("grid h=%d t=%d s=%d: |U|=%d connectors=%d", h, spec.t, spec.s, u_size, spec.connectors)
    return coloring, ss


class GridMetadata(BaseModel):
    """Sidecar describing the structured subgraph of a grid instance."""

    spec: GridConstructionSpec
    parts: List[List[int]]
    part_colors: List[int]
    rogue_colors: List[int]
    arcs: List[Tuple[int, int]]
    connector_scope: List[int]


def grid_metadata(spec: GridConstructionSpec, ss: StructuredSubgraph) -> GridMetadata:
    g = ss.orientation
    src, dst = np.nonzero(g.arcs == 1)
    return GridMetadata(
        spec=spec,
        parts=[p.tolist() for p in ss.parts],
        part_colors=list(ss.part_colors),
        rogue_colors=sorted(ss.rogue_colors),
        arcs=list(zip(g.vertices[src].tolist(), g.vertices[dst].tolist())),
        connector_scope=ss.connector_scope.tolist(),
    )
