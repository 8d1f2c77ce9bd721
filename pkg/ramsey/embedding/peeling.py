"""
Peeling and greedy embedding.

peel_to_min_degree is the s-core: networkx removes vertices of degree < s
with a bucket queue in O(V + E). A graph with e >= s*v always keeps a
nonempty core, since every deletion removes fewer than s edges.
"""
from typing import Dict, List

import networkx as nx

from ..core.trees import TreeSpec
from ..errors import PreconditionError


def peel_to_min_degree(g: nx.Graph, s: int) -> nx.Graph:
    if s < 1:
        raise PreconditionError(f"s={s} < 1")
    return nx.k_core(g, k=s).copy()


def min_degree(g: nx.Graph) -> int:
    return min((d for _, d in g.degree()), default=0)


def greedy_tree_embed(g: nx.Graph, tree: TreeSpec) -> List[int]:
    """
    Embed tree into g; mapping[tree vertex] = graph vertex.

    The root goes to the lowest vertex of g, every other tree vertex (BFS
    order) to the lowest unused neighbor of its parent's image. With min
    degree >= s at most s-1 neighbors are ever blocked.
    """
    s = tree.edge_count
    if g.number_of_nodes() == 0:
        raise PreconditionError("cannot embed into an empty graph")
    if min_degree(g) < s:
        raise PreconditionError(f"min degree {min_degree(g)} < {s}")

    image: Dict[int, int] = {}
    used = set()
    for v, parent in tree.bfs_parents():
        if parent is None:
            target = min(g.nodes)
        else:
            free = [w for w in g.neighbors(image[parent]) if w not in used]
            if not free:
                raise PreconditionError(f"no free neighbor for tree vertex {v}")
            target = min(free)
        image[v] = target
        used.add(target)
    return [image[v] for v in range(tree.vertex_count)]
