import logging

import numpy as np

from ..core.coloring import EdgeColoring, pair_count, row_offsets
from ..errors import PreconditionError

logger = logging.getLogger(__name__)


def lexical_coloring(n: int) -> EdgeColoring:
    """color(u, v) = max(u, v); each class is a star centred at its larger end."""
    if n < 2:
        raise PreconditionError(f"n={n} < 2")
    # pair (u, v) with u < v gets label v, dense id v - 1
    colors = np.empty(pair_count(n), dtype=np.uint32)
    offsets = row_offsets(n)
    for u in range(n - 1):
        start = offsets[u] + u + 1
        colors[start:start + n - u - 1] = np.arange(u, n - 1, dtype=np.uint32)
    return EdgeColoring(n, colors, np.arange(1, n, dtype=np.int64))


def random_coloring(n: int, k: int, seed: int) -> EdgeColoring:
    """Each edge uniform over k colors, independently."""
    if n < 2:
        raise PreconditionError(f"n={n} < 2")
    if k < 1:
        raise PreconditionError(f"k={k} < 1")
    rng = np.random.default_rng(seed)
    raw = rng.integers(0, k, size=pair_count(n), dtype=np.uint32)
    return EdgeColoring.from_labels(n, raw)


def subsample(coloring: EdgeColoring, p: float, seed: int) -> EdgeColoring:
    """Keep each vertex independently with probability p; order is preserved."""
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"p={p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    keep = np.flatnonzero(rng.random(coloring.n) < p)
    if keep.size < 2:
        raise PreconditionError("subsample left fewer than 2 vertices")
    if keep.size == coloring.n:
        return coloring
    logger.info("subsample kept %d of %d vertices", keep.size, coloring.n)
    return coloring.induced(keep)
