"""
Constructive form of the edge bound for S-free colorings: a graph with k
colors and no monochromatic S has fewer than k*s*|V| edges. Any class that
is denser than s*v(G_c) therefore has a nonempty s-core, and any nonempty
s-core hosts every tree with s edges.

mono_from_dense_color_class embeds as soon as a candidate class has a
nonempty s-core. That covers the density test and the weaker case of a
component that already has min degree >= s (lines of the affine plane).
"""
import logging
from typing import Dict, Iterable, Optional

import networkx as nx
import numpy as np

from ..core.graph import class_graphs
from ..core.coloring import EdgeColoring
from ..core.trees import TreeSpec
from ..core.verify import check_certificate
from ..errors import InvariantViolation
from ..models import MonoEmbedding
from .peeling import greedy_tree_embed, peel_to_min_degree

logger = logging.getLogger(__name__)


def lemma1_dense(edge_count: int, vertex_count: int, s: int) -> bool:
    """e >= s*v: enough edges to force a nonempty s-core."""
    return vertex_count > 0 and edge_count >= s * vertex_count


def mono_from_dense_color_class(
    coloring: EdgeColoring,
    S: TreeSpec,
    candidate_colors: Iterable[int],
    vertex_scope: Optional[np.ndarray] = None,
) -> Optional[MonoEmbedding]:
    colors = sorted({int(c) for c in candidate_colors})
    if not colors:
        return None
    return embed_first_dense(coloring, S, class_graphs(coloring, colors, vertex_scope))


def embed_first_dense(coloring: EdgeColoring, S: TreeSpec, graphs: Dict[int, nx.Graph]) -> Optional[MonoEmbedding]:
    """Embed S into the first class (by color id) with a nonempty s-core."""
    s = S.edge_count
    for color in sorted(graphs):
        G = graphs[color]
        if s == 0:
            if G.number_of_nodes():
                return MonoEmbedding(color=color, mapping=[min(G.nodes)])
            continue
        edges = G.number_of_edges()
        if edges < s:
            continue
        core = peel_to_min_degree(G, s)
        if core.number_of_nodes() == 0:
            continue
        touched = sum(1 for _, d in G.degree() if d > 0)
        reason = "density" if lemma1_dense(edges, touched, s) else "core"
        mapping = greedy_tree_embed(core, S)
        cert = MonoEmbedding(color=color, mapping=mapping)
        verdict = check_certificate(coloring, S, None, cert)
        if not verdict.ok:
            raise InvariantViolation("mono-embed", f"embedding rejected: {verdict.reason}")
        logger.info("mono embedding in color %d (%s test, core %d vertices)", color, reason, core.number_of_nodes())
        return cert
    return None
