"""
Feedback-stable orderings.

A true median order (maximum forward edges) is NP-hard to find. Everything
downstream only needs stability under single-vertex relocation, so the
search below stops at a local optimum for the move "remove v_i and reinsert
it anywhere". Such an order has the feedback property and, on a tournament,
consecutive vertices form a directed Hamiltonian path.

Local search:
1. Start from the identity order shuffled by the seed
2. For each position, compute the gain of every reinsertion point with two
   cumulative sums over the arc row of that vertex
3. Apply the best strictly improving move, keep scanning
4. Stop after a full pass without improvement
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..errors import InvariantViolation, PreconditionError
from .orientation import PartialOrientation

logger = logging.getLogger(__name__)

MAX_PASSES = 10_000


@dataclass(frozen=True, eq=False)
class MedianOrdering:
    order: np.ndarray  # vertex ids
    forward_count: int
    passes: int = 0


def relocation_gain(arc_row: np.ndarray, i: int) -> Tuple[int, int]:
    """
    Best (gain, target) for moving the vertex at position i.

    arc_row[k] is the arc value between that vertex and the vertex at
    position k (+1 outgoing, -1 incoming, 0 none). target is the index the
    vertex ends up at.
    """
    best_gain, best_j = 0, i
    if i + 1 < arc_row.size:
        right = -np.cumsum(arc_row[i + 1:])
        j = int(np.argmax(right))
        if right[j] > best_gain:
            best_gain, best_j = int(right[j]), i + 1 + j
    if i > 0:
        left = np.cumsum(arc_row[:i][::-1])[::-1]
        j = int(np.argmax(left))
        if left[j] > best_gain:
            best_gain, best_j = int(left[j]), j
    return best_gain, best_j


def _move(perm: np.ndarray, i: int, j: int) -> np.ndarray:
    v = perm[i:i + 1]
    if j > i:
        return np.concatenate((perm[:i], perm[i + 1:j + 1], v, perm[j + 1:]))
    return np.concatenate((perm[:j], v, perm[j:i], perm[i + 1:]))


def _local_search(arcs: np.ndarray, perm: np.ndarray) -> Tuple[np.ndarray, int]:
    passes = 0
    improved = True
    while improved:
        improved = False
        passes += 1
        if passes > MAX_PASSES:
            raise InvariantViolation("median-order", "local search did not converge")
        for i in range(perm.size):
            gain, j = relocation_gain(arcs[perm[i], perm], i)
            if gain > 0:
                perm = _move(perm, i, j)
                improved = True
    return perm, passes


def compute_median_order(g: PartialOrientation, seed: int, restarts: int = 1) -> MedianOrdering:
    arcs = g.arcs.astype(np.int32)
    rng = np.random.default_rng(seed)
    best = None
    for attempt in range(max(restarts, 1)):
        perm, passes = _local_search(arcs, rng.permutation(g.size))
        order = g.vertices[perm]
        count = g.forward_count(order)
        logger.debug("median order attempt %d: forward=%d passes=%d", attempt, count, passes)
        if best is None or count > best.forward_count:
            best = MedianOrdering(order=order, forward_count=count, passes=passes)
    return best


def feedback_violations(g: PartialOrientation, order) -> List[Tuple[int, int]]:
    """
    Positions (i, k) where forward arcs from v_i into v_{i+1..k} are
    outnumbered by backward arcs into v_i.
    """
    idx = g.local(order)
    sub = np.triu(g.arcs[np.ix_(idx, idx)].astype(np.int32), 1)
    running = np.cumsum(sub, axis=1)
    bad_i, bad_k = np.nonzero(np.triu(running < 0, 1))
    return list(zip(bad_i.tolist(), bad_k.tolist()))


def check_feedback_property(g: PartialOrientation, ordering) -> bool:
    order = ordering.order if isinstance(ordering, MedianOrdering) else ordering
    if sorted(np.asarray(order).tolist()) != sorted(g.vertices.tolist()):
        return False
    return not feedback_violations(g, order)


def is_local_optimum(g: PartialOrientation, order) -> bool:
    idx = g.local(order)
    arcs = g.arcs.astype(np.int32)
    return all(relocation_gain(arcs[idx[i], idx], i)[0] == 0 for i in range(idx.size))


def tournament_hamiltonian_path(g: PartialOrientation, seed: int) -> List[int]:
    if not g.is_tournament():
        raise PreconditionError("input is not a tournament")
    if g.size == 0:
        return []
    ordering = compute_median_order(g, seed)
    path = ordering.order.tolist()
    for a, b in zip(path, path[1:]):
        if not g.has_arc(a, b):
            raise InvariantViolation("median-order", f"consecutive pair {a},{b} is not forward")
    return path
