"""
Builds networkx views of color classes.

A SubgraphView throughout the package is a plain nx.Graph whose node set is
the scope and whose edges are one color class (or an explicit edge list)
restricted to that scope.
"""
from typing import Dict, Iterable, Optional, Sequence

import networkx as nx
import numpy as np

from .coloring import EdgeColoring


def graph_from_edges(vertices: Iterable[int], edges: Iterable[Sequence[int]]) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(int(v) for v in vertices)
    G.add_edges_from((int(u), int(v)) for u, v in edges)
    return G


def class_graphs(
    coloring: EdgeColoring,
    colors: Iterable[int],
    scope: Optional[np.ndarray] = None,
) -> Dict[int, nx.Graph]:
    """One SubgraphView per color, all built from a single scan of the scope."""
    scope = np.arange(coloring.n) if scope is None else np.asarray(scope, dtype=np.int64)
    edges = coloring.class_edges(colors, scope)
    return {c: graph_from_edges(scope.tolist(), e.tolist()) for c, e in edges.items()}


def color_class_graph(
    coloring: EdgeColoring, color: int, scope: Optional[np.ndarray] = None
) -> nx.Graph:
    """G_c: the edges of one color with both ends in scope."""
    return class_graphs(coloring, [color], scope)[int(color)]
