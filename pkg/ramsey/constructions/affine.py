"""
Affine plane coloring over Z/q.

Vertex x*q + y is the point (x, y). The edge between two points is colored
by the slope of the line through them; vertical lines get color q. Every
color class is a parallel class of q disjoint q-cliques.
"""
import logging

import numpy as np

from ..core.coloring import EdgeColoring, pair_count
from ..errors import PreconditionError

logger = logging.getLogger(__name__)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def affine_plane_coloring(q: int) -> EdgeColoring:
    if q < 2:
        raise PreconditionError(f"q={q} < 2")
    if not is_prime(q):
        raise PreconditionError(f"q={q} is not prime (prime powers are not supported)")

    n = q * q
    # multiplicative inverses mod q, inverse[0] unused
    inverse = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inverse[a] = pow(a, q - 2, q)

    xs = np.arange(n, dtype=np.int64) // q
    ys = np.arange(n, dtype=np.int64) % q
    colors = np.empty(pair_count(n), dtype=np.uint32)
    cursor = 0
    for u in range(n - 1):
        dx = (xs[u + 1:] - xs[u]) % q
        dy = (ys[u + 1:] - ys[u]) % q
        slope = (dy * inverse[dx]) % q
        row = np.where(dx == 0, q, slope)
        colors[cursor:cursor + row.size] = row
        cursor += row.size

    logger.debug("affine plane q=%d: n=%d", q, n)
    return EdgeColoring(n, colors, np.arange(q + 1, dtype=np.int64))
