"""
Layered coloring: t parts V_1..V_t of size s//2; every edge inside V_i and
every edge from V_i to a later V_j gets color i.

No color class contains a path with s+1 edges and every vertex of V_i sees
exactly the colors 1..i, so there is no properly colored star with t+1
edges. When s//2 == 1 the parts are singletons and color t never occurs.
"""
import numpy as np

from ..core.coloring import EdgeColoring, pair_count, row_offsets
from ..errors import PreconditionError


def layered_coloring(s: int, t: int) -> EdgeColoring:
    if s < 2:
        raise PreconditionError(f"s={s} < 2")
    if t < 1:
        raise PreconditionError(f"t={t} < 1")
    width = s // 2
    n = t * width
    layer = np.arange(n, dtype=np.int64) // width + 1
    raw = np.empty(pair_count(n), dtype=np.int64)
    offsets = row_offsets(n)
    for u in range(n - 1):
        start = offsets[u] + u + 1
        # later vertices sit in the same or a later layer, so the min is layer[u]
        raw[start:start + n - u - 1] = layer[u]
    return EdgeColoring.from_labels(n, raw)


def layer_of(s: int, v: int) -> int:
    """1-based layer index of vertex v."""
    return v // (s // 2) + 1
