"""
Coloring file format.

    KCOLOR 1 <n>
    <C(n,2) whitespace-separated labels, pairs in rank order>

Labels are written as given (the side table), so load(save(x)) == x.
"""
import logging
from pathlib import Path
from typing import IO, Union

import numpy as np

from ..errors import FormatError
from .coloring import EdgeColoring, pair_count

logger = logging.getLogger(__name__)

MAGIC = "KCOLOR"
VERSION = "1"
WRITE_CHUNK = 1 << 20

Source = Union[str, Path, IO[str]]


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text()


def parse_coloring(text: str) -> EdgeColoring:
    header, _, body = text.lstrip().partition("\n")
    fields = header.split()
    if len(fields) != 3 or fields[0] != MAGIC or fields[1] != VERSION:
        raise FormatError(f"malformed header: {header.strip()!r}")
    try:
        n = int(fields[2])
    except ValueError as exc:
        raise FormatError(f"malformed header: {header.strip()!r}") from exc
    if n < 2:
        raise FormatError(f"vertex count {n} < 2")

    tokens = body.split()
    if len(tokens) != pair_count(n):
        raise FormatError(
            f"triangle length mismatch: expected {pair_count(n)} entries, got {len(tokens)}"
        )
    try:
        raw = np.array(tokens, dtype=np.int64)
    except ValueError as exc:
        raise FormatError("color entries must be non-negative integers") from exc
    del tokens
    return EdgeColoring.from_labels(n, raw)


def load_coloring(source: Source) -> EdgeColoring:
    coloring = parse_coloring(_read_text(source))
    logger.debug("loaded coloring n=%d k=%d", coloring.n, coloring.k)
    return coloring


def save_coloring(coloring: EdgeColoring, sink: Source) -> None:
    if coloring.n < 2:
        raise FormatError(f"vertex count {coloring.n} < 2")
    if hasattr(sink, "write"):
        _write(coloring, sink)
        return
    with open(sink, "w") as fh:
        _write(coloring, fh)


def _write(coloring: EdgeColoring, fh: IO[str]) -> None:
    fh.write(f"{MAGIC} {VERSION} {coloring.n}\n")
    colors = coloring.colors
    labels = coloring.labels
    for start in range(0, colors.size, WRITE_CHUNK):
        chunk = labels[colors[start:start + WRITE_CHUNK]]
        if start:
            fh.write(" ")
        fh.write(" ".join(map(str, chunk.tolist())))
    fh.write("\n")
