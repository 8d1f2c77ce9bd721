"""
Color-class structure reports.

mono_component_profile returns one DataFrame row per color with the
component count, the smallest and largest component orders, the edge count
and whether every component is a clique.
"""
import logging
from typing import Sequence

import networkx as nx
import numpy as np
import pandas as pd

from ..core.coloring import EdgeColoring
from ..core.graph import graph_from_edges

logger = logging.getLogger(__name__)

PROFILE_COLUMNS = ["color", "label", "edges", "components", "min_order", "max_order", "all_cliques"]


def mono_component_profile(coloring: EdgeColoring) -> pd.DataFrame:
    rows = []
    for color, edges in coloring.class_edges(coloring.palette).items():
        G = graph_from_edges(np.unique(edges).tolist(), edges.tolist())
        orders, cliques = [], True
        for comp in nx.connected_components(G):
            m = len(comp)
            orders.append(m)
            if G.subgraph(comp).number_of_edges() != m * (m - 1) // 2:
                cliques = False
        rows.append({
            "color": color,
            "label": coloring.label_of(color),
            "edges": int(edges.shape[0]),
            "components": len(orders),
            "min_order": min(orders, default=0),
            "max_order": max(orders, default=0),
            "all_cliques": cliques,
        })
    return pd.DataFrame(rows, columns=PROFILE_COLUMNS)


def max_distinct_colors_at_vertex(coloring: EdgeColoring) -> int:
    """A properly colored star with t+1 edges exists iff this is >= t+1."""
    if coloring.n < 2:
        return 0
    return max(coloring.multiplicities(v)[0].size for v in range(coloring.n))


def classify_clique_coloring(coloring: EdgeColoring, vertices: Sequence[int]) -> str:
    """
    "monochromatic", "rainbow", "lexical" or "mixed" for the clique on vertices.

    Lexical means some vertex order makes two edges share a color exactly
    when they share their larger endpoint. It is found by repeatedly peeling
    a vertex whose remaining edges carry one color that occurs nowhere else.
    """
    sub = coloring.induced(vertices)
    m = sub.n
    if m < 2 or sub.k == 1:
        return "monochromatic"
    if sub.k == sub.colors.size:
        return "rainbow"

    M = sub.matrix()
    remaining = list(range(m))
    while len(remaining) > 1:
        peeled = None
        for w in remaining:
            others = [x for x in remaining if x != w]
            star = set(M[w, others].tolist())
            if len(star) != 1:
                continue
            c = star.pop()
            rest = M[np.ix_(others, others)][np.triu_indices(len(others), 1)]
            if c not in set(rest.tolist()):
                peeled = w
                break
        if peeled is None:
            return "mixed"
        remaining.remove(peeled)
    return "lexical"
