"""
Properly colored copy of T, or a monochromatic S, in any coloring of K_n
with n >= 2st + t^2.

Recursion on the edges of T:
1. t = 1: any edge is a properly colored T
2. Pick an internal vertex v whose other neighbors are leaves v_1..v_k and
   its remaining neighbor u; T_1 = T minus the leaves, t_1 = t - k
3. U = vertices that reach k colors by deleting at most t_1 edges. If
   |U| > 2(ks + t_1) the constrained set yields a monochromatic S
4. Otherwise embed T_1 inside W = V minus U, then hang the k leaves on the
   image of v through edges of k new distinct colors, none equal to the
   color of the image of uv
"""
import logging
from collections import deque
from typing import Dict, List, Tuple, Union

import networkx as nx
import numpy as np

from ..core.coloring import EdgeColoring
from ..core.trees import TreeSpec
from ..core.verify import check_certificate
from ..errors import InvariantViolation, PreconditionError
from ..models import Failure, MonoEmbedding, ProperEmbedding
from .local_constraints import local_constraints_bound, local_constraints_set, mono_from_constrained_set

logger = logging.getLogger(__name__)

STAGE = "proper-recursion"


def proper_threshold(s: int, t: int) -> int:
    return 2 * s * t + t * t


def split_leaf_star(T: nx.Graph, root: int) -> Tuple[int, int, List[int]]:
    """
    (v, u, leaves): v is a deepest vertex that has children, u its parent
    (its smallest child when v is the root), leaves the other neighbors of v.
    """
    parent = {root: None}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(T.neighbors(x)):
            if y not in depth:
                parent[y] = x
                depth[y] = depth[x] + 1
                queue.append(y)
    internal = [x for x in T.nodes if any(parent.get(y) == x for y in T.neighbors(x))]
    v = min(internal, key=lambda x: (-depth[x], x))
    children = sorted(y for y in T.neighbors(v) if parent.get(y) == v)
    if parent[v] is None:
        return v, children[0], children[1:]
    return v, parent[v], children


def _embed(
    coloring: EdgeColoring,
    S: TreeSpec,
    T: nx.Graph,
    root: int,
    scope: np.ndarray,
    depth: int,
) -> Union[Dict[int, int], MonoEmbedding, Failure]:
    t = T.number_of_edges()
    s = S.edge_count
    if t == 0:
        if scope.size == 0:
            return Failure(stage=STAGE, reason="no vertex left for a single-vertex tree")
        return {root: int(scope[0])}
    if t == 1:
        if scope.size < 2:
            return Failure(stage=STAGE, reason=f"depth {depth}: fewer than 2 vertices for the base edge")
        a, b = next(iter(T.edges))
        return {a: int(scope[0]), b: int(scope[1])}

    v, u, leaves = split_leaf_star(T, root)
    k = len(leaves)
    t1 = t - k

    U = local_constraints_set(coloring, a=t1, b=k, scope=scope)
    bound = local_constraints_bound(t1, k, s)
    logger.debug("depth %d: t=%d k=%d |scope|=%d |U|=%d bound=%d", depth, t, k, scope.size, U.size, bound)
    if U.size > bound:
        cert = mono_from_constrained_set(coloring, U, S, a=t1, b=k, scope=scope)
        if cert is not None:
            return cert
        logger.warning("depth %d: |U|=%d exceeds %d but no dense class was found", depth, U.size, bound)

    W = np.setdiff1d(scope, U)
    if scope.size >= proper_threshold(s, t) and W.size < proper_threshold(s, t1) and U.size <= bound:
        raise InvariantViolation(STAGE, f"|W|={W.size} < 2st_1 + t_1^2 = {proper_threshold(s, t1)}")

    T1 = T.copy()
    T1.remove_nodes_from(leaves)
    inner = _embed(coloring, S, T1, root, W, depth + 1)
    if not isinstance(inner, dict):
        return inner

    u_img, v_img = inner[u], inner[v]
    used = set(inner.values())
    row = coloring.row(v_img)
    seen = {int(row[u_img])}
    picked: List[int] = []
    for w in scope:
        w = int(w)
        if w in used or int(row[w]) in seen:
            continue
        picked.append(w)
        seen.add(int(row[w]))
        if len(picked) == k:
            break
    if len(picked) < k:
        return Failure(
            stage=STAGE,
            reason=f"depth {depth}: vertex {v_img} has only {len(picked)} of {k} fresh colors outside the copy",
        )
    inner.update(zip(leaves, picked))
    return inner


def embed_proper_or_mono(coloring: EdgeColoring, S: TreeSpec, T: TreeSpec):
    if coloring.n < 2:
        raise PreconditionError("need at least 2 vertices")
    t = T.edge_count
    if t < 1:
        return ProperEmbedding(mapping=[0])

    scope = np.arange(coloring.n, dtype=np.int64)
    result = _embed(coloring, S, T.to_networkx(), T.root, scope, 0)
    if isinstance(result, Failure):
        level = "error" if coloring.n >= proper_threshold(S.edge_count, t) else "info"
        getattr(logger, level)("proper recursion failed: %s", result.reason)
        return result
    if isinstance(result, MonoEmbedding):
        return result

    cert = ProperEmbedding(mapping=[result[x] for x in range(T.vertex_count)])
    verdict = check_certificate(coloring, T, None, cert)
    if not verdict.ok:
        raise InvariantViolation(STAGE, f"proper embedding rejected: {verdict.reason}")
    return cert
