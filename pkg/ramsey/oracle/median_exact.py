"""
Exact maximum forward-edge ordering.

Dynamic programming over vertex subsets: the best order of a set ends with
some vertex v, which gains one forward edge per arc u -> v from the rest of
the set. 2^n * n steps, so n is capped at 9.
"""
from typing import List, Tuple

import numpy as np

from ..errors import PreconditionError
from ..ordering.orientation import PartialOrientation

EXACT_LIMIT = 9


def median_order_exact(g: PartialOrientation) -> Tuple[int, List[int]]:
    n = g.size
    if n > EXACT_LIMIT:
        raise PreconditionError(f"exact median order limited to n <= {EXACT_LIMIT}, got {n}")
    if n == 0:
        return 0, []

    # into[v]: bitmask of u with an arc u -> v
    into = [0] * n
    for u, v in zip(*np.nonzero(g.arcs == 1)):
        into[int(v)] |= 1 << int(u)

    full = (1 << n) - 1
    best = [-1] * (full + 1)
    last = [-1] * (full + 1)
    best[0] = 0
    for mask in range(full + 1):
        if best[mask] < 0:
            continue
        for v in range(n):
            if mask >> v & 1:
                continue
            nxt = mask | (1 << v)
            value = best[mask] + bin(mask & into[v]).count("1")
            if value > best[nxt]:
                best[nxt] = value
                last[nxt] = v

    order: List[int] = []
    mask = full
    while mask:
        v = last[mask]
        order.append(v)
        mask &= ~(1 << v)
    order.reverse()
    return best[full], g.vertices[order].tolist()
