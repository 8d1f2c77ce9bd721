"""Exact tree containment by backtracking over BFS order of the tree."""
import logging
from typing import Dict, List

import networkx as nx

from ..config import ORACLE_NODE_BUDGET
from ..core.trees import TreeSpec
from ..errors import PreconditionError
from ..models import OracleResult

logger = logging.getLogger(__name__)

PATH_HOST_LIMIT = 60
TREE_HOST_LIMIT = 25


class _Budget(Exception):
    pass


def _is_path(tree: TreeSpec) -> bool:
    return tree.max_degree() <= 2


def tree_containment_exact(g: nx.Graph, tree: TreeSpec, budget: int = ORACLE_NODE_BUDGET) -> OracleResult:
    """value 1 with the embedding as witness, value 0 when none exists."""
    limit = PATH_HOST_LIMIT if _is_path(tree) else TREE_HOST_LIMIT
    if g.number_of_nodes() > limit:
        raise PreconditionError(f"host has {g.number_of_nodes()} vertices, limit {limit}")

    order = tree.bfs_parents()
    tree_degree = {v: len(ws) for v, ws in tree.adjacency().items()}
    hosts = sorted(g.nodes)
    image: Dict[int, int] = {}
    used = set()
    nodes = 0

    def place(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget()
        if i == len(order):
            return True
        v, parent = order[i]
        pool = hosts if parent is None else sorted(g.neighbors(image[parent]))
        for w in pool:
            if w in used or g.degree(w) < tree_degree[v]:
                continue
            image[v] = w
            used.add(w)
            if place(i + 1):
                return True
            used.discard(w)
            del image[v]
        return False

    try:
        found = place(0)
    except _Budget:
        logger.info("tree containment hit the %d node budget", budget)
        return OracleResult(status="unknown", nodes=nodes)

    if not found:
        return OracleResult(status="exact", value=0, nodes=nodes)
    witness: List[int] = [image[v] for v in range(tree.vertex_count)]
    return OracleResult(status="exact", value=1, witness=witness, nodes=nodes)
