"""
EdgeColoring: a complete graph K_n with a color on every unordered pair.

Storage is the upper triangle as one flat uint32 array indexed by pair rank,
pairs ordered (0,1),(0,2),...,(0,n-1),(1,2),...,(n-2,n-1). Colors are dense
ids 0..k-1 assigned in increasing order of the original labels; the labels
themselves are kept in a side table so files round-trip exactly.

For n <= DENSE_CACHE_LIMIT a symmetric int32 matrix is built lazily and all
row/block reads go through it. Above that, rows are gathered from the
triangle (left part strided, right part contiguous).
"""
import logging
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..config import DENSE_CACHE_LIMIT, MAX_LABEL
from ..errors import FormatError, PreconditionError

logger = logging.getLogger(__name__)

LOOKUP_LABEL_LIMIT = 1 << 26      # labels below this are remapped via a lookup table
BINCOUNT_PALETTE_LIMIT = 1 << 16  # palettes up to this size are counted with bincount


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def row_offsets(n: int) -> np.ndarray:
    """offsets[u] + v is the rank of pair (u, v) for u < v."""
    u = np.arange(n, dtype=np.int64)
    return u * (2 * n - u - 1) // 2 - u - 1


def densify(raw: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Remap arbitrary non-negative labels to dense ids.

    Returns (dense ids as uint32, labels) where labels[id] is the original
    label and labels is strictly increasing.
    """
    raw = np.asarray(raw)
    if raw.size == 0:
        return np.zeros(0, dtype=np.uint32), np.zeros(0, dtype=np.int64)
    if raw.dtype.kind not in "iu":
        raise FormatError("color labels must be integers")
    if raw.dtype.kind == "i" and int(raw.min()) < 0:
        raise FormatError("negative color label")
    top = int(raw.max())
    if top > MAX_LABEL:
        raise FormatError(f"color label {top} exceeds {MAX_LABEL}")

    if top < LOOKUP_LABEL_LIMIT:
        present = np.zeros(top + 1, dtype=bool)
        present[raw] = True
        labels = np.flatnonzero(present).astype(np.int64)
        if labels.size == top + 1:
            # already dense
            return raw.astype(np.uint32, copy=False), labels
        lookup = (np.cumsum(present, dtype=np.int64) - 1).astype(np.uint32)
        return lookup[raw], labels

    labels, inverse = np.unique(raw, return_inverse=True)
    return inverse.astype(np.uint32).reshape(-1), labels.astype(np.int64)


class EdgeColoring:
    """Immutable edge coloring of K_n. Safe to share between readers."""

    def __init__(self, n: int, colors: np.ndarray, labels: np.ndarray):
        if n < 1:
            raise PreconditionError("a coloring needs at least one vertex")
        colors = np.ascontiguousarray(colors, dtype=np.uint32)
        labels = np.asarray(labels, dtype=np.int64)
        if colors.shape != (pair_count(n),):
            raise FormatError(
                f"triangle length mismatch: expected {pair_count(n)} entries, got {colors.size}"
            )
        if colors.size and int(colors.max()) >= labels.size:
            raise FormatError("dense color id outside the label table")

        colors.flags.writeable = False
        labels.flags.writeable = False
        self._n = n
        self._colors = colors
        self._labels = labels
        self._offsets = row_offsets(n)
        self._matrix: Optional[np.ndarray] = None

    # Constructors

    @classmethod
    def from_labels(cls, n: int, raw: np.ndarray) -> "EdgeColoring":
        dense, labels = densify(raw)
        return cls(n, dense, labels)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "EdgeColoring":
        matrix = np.asarray(matrix)
        n = matrix.shape[0]
        if matrix.ndim != 2 or matrix.shape[1] != n:
            raise FormatError("color matrix must be square")
        iu, ju = np.triu_indices(n, 1)
        upper = matrix[iu, ju]
        if not np.array_equal(upper, matrix[ju, iu]):
            raise FormatError("color matrix must be symmetric")
        return cls.from_labels(n, upper)

    @classmethod
    def monochromatic(cls, n: int) -> "EdgeColoring":
        return cls(n, np.zeros(pair_count(n), dtype=np.uint32), np.zeros(1 if n > 1 else 0, dtype=np.int64))

    @classmethod
    def rainbow(cls, n: int) -> "EdgeColoring":
        m = pair_count(n)
        return cls(n, np.arange(m, dtype=np.uint32), np.arange(m, dtype=np.int64))

    # Basic reads

    @property
    def n(self) -> int:
        return self._n

    @property
    def k(self) -> int:
        """Palette size."""
        return int(self._labels.size)

    @property
    def colors(self) -> np.ndarray:
        return self._colors

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def palette(self) -> np.ndarray:
        return np.arange(self.k, dtype=np.int64)

    def check_vertex(self, v: int) -> int:
        if not 0 <= int(v) < self._n:
            raise PreconditionError(f"vertex {v} out of range for n={self._n}")
        return int(v)

    def pair_rank(self, u: int, v: int) -> int:
        u, v = self.check_vertex(u), self.check_vertex(v)
        if u == v:
            raise PreconditionError("a pair needs two distinct vertices")
        if u > v:
            u, v = v, u
        return int(self._offsets[u] + v)

    def color_of(self, u: int, v: int) -> int:
        if self._matrix is not None:
            u, v = self.check_vertex(u), self.check_vertex(v)
            if u == v:
                raise PreconditionError("a pair needs two distinct vertices")
            return int(self._matrix[u, v])
        return int(self._colors[self.pair_rank(u, v)])

    def label_of(self, color: int) -> int:
        return int(self._labels[color])

    def color_for_label(self, label: int) -> Optional[int]:
        """Dense id of a file label, None if no pair carries it."""
        i = int(np.searchsorted(self._labels, label))
        if i < self._labels.size and int(self._labels[i]) == label:
            return i
        return None

    def matrix(self) -> np.ndarray:
        """Symmetric int32 matrix of dense ids, -1 on the diagonal."""
        if self._matrix is None:
            if self._n > DENSE_CACHE_LIMIT:
                raise PreconditionError(
                    f"dense matrix refused for n={self._n} > {DENSE_CACHE_LIMIT}"
                )
            matrix = np.full((self._n, self._n), -1, dtype=np.int32)
            iu, ju = np.triu_indices(self._n, 1)
            matrix[iu, ju] = self._colors
            matrix[ju, iu] = self._colors
            matrix.flags.writeable = False
            self._matrix = matrix
        return self._matrix

    def row(self, v: int) -> np.ndarray:
        """Colors of all pairs at v as int64, with -1 at v itself."""
        v = self.check_vertex(v)
        n = self._n
        if n <= DENSE_CACHE_LIMIT:
            return self.matrix()[v].astype(np.int64)
        out = np.empty(n, dtype=np.int64)
        if v:
            out[:v] = self._colors[self._offsets[:v] + v]
        out[v] = -1
        if v < n - 1:
            start = self._offsets[v] + v + 1
            out[v + 1:] = self._colors[start:start + n - v - 1]
        return out

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if self._n <= DENSE_CACHE_LIMIT:
            return self.matrix()[np.ix_(rows, cols)].astype(np.int64)
        out = np.empty((rows.size, cols.size), dtype=np.int64)
        for i, r in enumerate(rows):
            out[i] = self.row(int(r))[cols]
        return out

    # Counting

    def multiplicities(self, v: int, scope: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        Color multiplicities at v, optionally restricted to edges into scope.

        Returns (colors, counts) for colors with a positive count, ordered by
        color id.
        """
        row = self.row(v)
        if scope is not None:
            row = row[np.asarray(scope, dtype=np.int64)]
        row = row[row >= 0]
        if self.k <= BINCOUNT_PALETTE_LIMIT:
            counts = np.bincount(row, minlength=self.k)
            present = np.flatnonzero(counts)
            return present, counts[present]
        return np.unique(row, return_counts=True)

    def class_sizes(self) -> np.ndarray:
        """Edge count per dense color id."""
        return np.bincount(self._colors, minlength=self.k)

    def class_edges(
        self, colors: Iterable[int], scope: Optional[np.ndarray] = None
    ) -> Dict[int, np.ndarray]:
        """
        Edges of the given colors with both endpoints in scope.

        Returns color -> (m, 2) array of global vertex pairs (u, v) with u
        before v in scope order. Colors with no edge map to an empty array.
        """
        wanted = np.unique(np.fromiter((int(c) for c in colors), dtype=np.int64))
        scope = np.arange(self._n, dtype=np.int64) if scope is None else np.asarray(scope, dtype=np.int64)
        found: Dict[int, list] = {int(c): [] for c in wanted}
        if scope.size < 2 or wanted.size == 0:
            return {c: np.zeros((0, 2), dtype=np.int64) for c in found}

        if scope.size <= DENSE_CACHE_LIMIT and self._n <= DENSE_CACHE_LIMIT:
            sub = self.block(scope, scope)
            iu, ju = np.triu_indices(scope.size, 1)
            values = sub[iu, ju]
            hit = np.isin(values, wanted)
            for c in found:
                sel = hit & (values == c)
                found[c].append(np.column_stack((scope[iu[sel]], scope[ju[sel]])))
        else:
            for i in range(scope.size - 1):
                u = int(scope[i])
                later = scope[i + 1:]
                values = self.row(u)[later]
                hit = np.isin(values, wanted)
                if not hit.any():
                    continue
                for c in np.unique(values[hit]):
                    ends = later[values == c]
                    found[int(c)].append(np.column_stack((np.full(ends.size, u), ends)))

        return {
            c: (np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64))
            for c, parts in found.items()
        }

    # Derived colorings

    def induced(self, vertices: Sequence[int]) -> "EdgeColoring":
        """Induced coloring on the given vertices, renumbered in increasing order."""
        keep = np.unique(np.asarray(vertices, dtype=np.int64))
        if keep.size and (keep[0] < 0 or keep[-1] >= self._n):
            raise PreconditionError("induced vertex set out of range")
        m = int(keep.size)
        if m < 1:
            raise PreconditionError("induced coloring needs at least one vertex")
        dense = np.empty(pair_count(m), dtype=np.uint32)
        cursor = 0
        for i in range(m - 1):
            values = self.row(int(keep[i]))[keep[i + 1:]]
            dense[cursor:cursor + values.size] = values
            cursor += values.size
        redense, used = densify(dense)
        return EdgeColoring(m, redense, self._labels[used])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._labels, other._labels)
            and np.array_equal(self._colors, other._colors)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"EdgeColoring(n={self._n}, k={self.k})"


def color_multiplicities_at(coloring: EdgeColoring, v: int) -> Dict[int, int]:
    """Map color -> number of edges of that color at v."""
    colors, counts = coloring.multiplicities(v)
    return {int(c): int(m) for c, m in zip(colors, counts)}
