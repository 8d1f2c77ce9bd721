"""
PartialOrientation: a graph on a vertex list where each pair is directed one
way, left undirected, or absent.

Local index i stands for vertices[i]. arcs[i, j] = +1 means i -> j and
arcs[j, i] = -1 mirrors it; undirected is a symmetric boolean mask that never
overlaps a directed pair.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..errors import PreconditionError


@dataclass(frozen=True, eq=False)
class PartialOrientation:
    vertices: np.ndarray
    arcs: np.ndarray
    undirected: np.ndarray
    _index: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = self.vertices.size
        if self.arcs.shape != (m, m) or self.undirected.shape != (m, m):
            raise PreconditionError("orientation matrices must be square over the vertex list")
        if not np.array_equal(self.arcs, -self.arcs.T):
            raise PreconditionError("arcs must be antisymmetric")
        if not np.array_equal(self.undirected, self.undirected.T):
            raise PreconditionError("undirected mask must be symmetric")
        if np.any(self.undirected & (self.arcs != 0)):
            raise PreconditionError("a pair cannot be both directed and undirected")
        object.__setattr__(self, "_index", {int(v): i for i, v in enumerate(self.vertices)})

    @property
    def size(self) -> int:
        return int(self.vertices.size)

    def local(self, vertices: Iterable[int]) -> np.ndarray:
        try:
            return np.fromiter((self._index[int(v)] for v in vertices), dtype=np.int64)
        except KeyError as exc:
            raise PreconditionError(f"vertex {exc.args[0]} not in orientation") from exc

    def has_arc(self, u: int, v: int) -> bool:
        return self.arcs[self._index[int(u)], self._index[int(v)]] == 1

    def is_undirected(self, u: int, v: int) -> bool:
        return bool(self.undirected[self._index[int(u)], self._index[int(v)]])

    def directed_count(self) -> int:
        return int(np.count_nonzero(self.arcs == 1))

    def is_tournament(self) -> bool:
        off = ~np.eye(self.size, dtype=bool)
        return bool(np.all(self.arcs[off] != 0))

    def forward_count(self, order: Sequence[int]) -> int:
        """Directed pairs that point forward along order (vertex ids)."""
        idx = self.local(order)
        sub = self.arcs[np.ix_(idx, idx)]
        return int(np.count_nonzero(np.triu(sub, 1) == 1))

    def restrict(self, vertices: Sequence[int]) -> "PartialOrientation":
        idx = self.local(vertices)
        return PartialOrientation(
            vertices=self.vertices[idx].copy(),
            arcs=self.arcs[np.ix_(idx, idx)].copy(),
            undirected=self.undirected[np.ix_(idx, idx)].copy(),
        )

    def to_networkx(self) -> nx.DiGraph:
        G = nx.DiGraph()
        G.add_nodes_from(self.vertices.tolist())
        src, dst = np.nonzero(self.arcs == 1)
        G.add_edges_from(zip(self.vertices[src].tolist(), self.vertices[dst].tolist()))
        return G

    @classmethod
    def from_arcs(
        cls,
        n: int,
        arcs: Iterable[Tuple[int, int]],
        undirected: Iterable[Tuple[int, int]] = (),
        vertices: Optional[np.ndarray] = None,
    ) -> "PartialOrientation":
        """Build from local-index arc and undirected pair lists."""
        matrix = np.zeros((n, n), dtype=np.int8)
        mask = np.zeros((n, n), dtype=bool)
        for u, v in arcs:
            if u == v or matrix[u, v] != 0:
                raise PreconditionError(f"pair ({u}, {v}) directed twice or a loop")
            matrix[u, v], matrix[v, u] = 1, -1
        for u, v in undirected:
            mask[u, v] = mask[v, u] = True
        verts = np.arange(n, dtype=np.int64) if vertices is None else np.asarray(vertices, dtype=np.int64)
        return cls(vertices=verts, arcs=matrix, undirected=mask)


def random_tournament(n: int, seed: int) -> PartialOrientation:
    """Each pair directed uniformly at random."""
    rng = np.random.default_rng(seed)
    flips = rng.random((n, n)) < 0.5
    upper = np.triu(np.where(flips, 1, -1), 1).astype(np.int8)
    return PartialOrientation(
        vertices=np.arange(n, dtype=np.int64),
        arcs=upper - upper.T,
        undirected=np.zeros((n, n), dtype=bool),
    )


def tournament_from_bits(n: int, bits: int) -> PartialOrientation:
    """The tournament whose i-th pair (rank order) points forward iff bit i is set."""
    arcs = []
    rank = 0
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if (bits >> rank) & 1 else (v, u))
            rank += 1
    return PartialOrientation.from_arcs(n, arcs)
