"""
TreeSpec: the target tree S (or T) with a designated root.

Vertices are 0..vertex_count-1. Presets cover the shapes the CLI accepts
(path:s, star:s, spider:a,b,c); nonisomorphic_trees enumerates every tree
with a given number of edges through networkx.
"""
import json
from collections import deque
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import FormatError


class TreeSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertex_count: int = Field(..., ge=1)
    edges: List[Tuple[int, int]] = Field(default_factory=list)
    root: int = 0

    @model_validator(mode="after")
    def _check_tree(self) -> "TreeSpec":
        n = self.vertex_count
        if len(self.edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, got {len(self.edges)}")
        if not 0 <= self.root < n:
            raise ValueError(f"root {self.root} out of range")
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad tree edge ({u}, {v})")
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(self.edges)
        if not nx.is_tree(g):
            raise ValueError("edges do not form a tree")
        return self

    @property
    def edge_count(self) -> int:
        return self.vertex_count - 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v: [] for v in range(self.vertex_count)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def bfs_parents(self) -> List[Tuple[int, Optional[int]]]:
        """(vertex, parent) pairs in BFS order from the root; children by label."""
        adj = self.adjacency()
        order: List[Tuple[int, Optional[int]]] = [(self.root, None)]
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    order.append((w, v))
                    queue.append(w)
        return order

    def max_degree(self) -> int:
        if self.vertex_count == 1:
            return 0
        return int(np.bincount(np.asarray(self.edges).ravel()).max())

    @classmethod
    def from_networkx(cls, g: nx.Graph, root: int = 0) -> "TreeSpec":
        mapping = {v: i for i, v in enumerate(sorted(g.nodes))}
        edges = [tuple(sorted((mapping[u], mapping[v]))) for u, v in g.edges]
        return cls(vertex_count=len(mapping), edges=sorted(edges), root=mapping.get(root, 0))


def path_tree(s: int) -> TreeSpec:
    """Path with s edges rooted at one end."""
    return TreeSpec(vertex_count=s + 1, edges=[(i, i + 1) for i in range(s)], root=0)


def star_tree(s: int) -> TreeSpec:
    """Star with s edges rooted at its center 0."""
    return TreeSpec(vertex_count=s + 1, edges=[(0, i) for i in range(1, s + 1)], root=0)


def spider_tree(legs: Sequence[int]) -> TreeSpec:
    """Legs of the given lengths joined at center 0."""
    edges: List[Tuple[int, int]] = []
    nxt = 1
    for length in legs:
        if length < 1:
            raise ValueError("spider legs need positive length")
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return TreeSpec(vertex_count=nxt, edges=edges, root=0)


def parse_tree_preset(text: str) -> TreeSpec:
    """Parse "path:s", "star:s" or "spider:a,b,c"."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "path":
            return path_tree(int(arg))
        if kind == "star":
            return star_tree(int(arg))
        if kind == "spider":
            return spider_tree([int(x) for x in arg.split(",") if x])
    except ValueError as exc:
        raise FormatError(f"bad tree preset {text!r}: {exc}") from exc
    raise FormatError(f"unknown tree preset {text!r}")


def load_tree(source: str) -> TreeSpec:
    """A preset string, or a JSON file {vertex_count, edges, root}."""
    if ":" in source and not Path(source).exists():
        return parse_tree_preset(source)
    try:
        payload = json.loads(Path(source).read_text())
        return TreeSpec.model_validate(payload)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise FormatError(f"cannot read tree {source!r}: {exc}") from exc


def nonisomorphic_trees(edge_count: int) -> List[TreeSpec]:
    """Every tree with edge_count edges up to isomorphism, rooted at 0."""
    if edge_count < 0:
        raise ValueError("edge count must be non-negative")
    if edge_count == 0:
        return [TreeSpec(vertex_count=1)]
    if edge_count == 1:
        return [path_tree(1)]
    return [TreeSpec.from_networkx(g) for g in nx.nonisomorphic_trees(edge_count + 1)]


def random_tree(edge_count: int, seed: int) -> TreeSpec:
    """Uniform labelled tree via a Prufer sequence."""
    if edge_count <= 1:
        return path_tree(max(edge_count, 0))
    rng = np.random.default_rng(seed)
    seq = rng.integers(0, edge_count + 1, size=edge_count - 1).tolist()
    return TreeSpec.from_networkx(nx.from_prufer_sequence(seq))
