"""
Certificate verification.

Pure functions of (coloring, target, certificate). Nothing here raises on a
malformed certificate: every defect is reported as a Verdict reason code.
"""
from typing import List, Optional

from ..models import Failure, MonoEmbedding, ProperEmbedding, RainbowPath, Verdict
from .coloring import EdgeColoring
from .trees import TreeSpec


def _check_map(coloring: EdgeColoring, tree: Optional[TreeSpec], mapping: List[int]) -> Optional[str]:
    if tree is None:
        return "missing-target"
    if len(mapping) != tree.vertex_count:
        return "incomplete-map"
    if any(not 0 <= v < coloring.n for v in mapping):
        return "vertex-out-of-range"
    if len(set(mapping)) != len(mapping):
        return "not-injective"
    return None


def check_certificate(
    coloring: EdgeColoring,
    tree: Optional[TreeSpec],
    t: Optional[int],
    cert,
) -> Verdict:
    if isinstance(cert, Failure):
        return Verdict(ok=False, reason="failure")

    if isinstance(cert, MonoEmbedding):
        problem = _check_map(coloring, tree, cert.mapping)
        if problem:
            return Verdict(ok=False, reason=problem)
        if not 0 <= cert.color < coloring.k:
            return Verdict(ok=False, reason="unknown-color")
        for a, b in tree.edges:
            if coloring.color_of(cert.mapping[a], cert.mapping[b]) != cert.color:
                return Verdict(ok=False, reason="wrong-color")
        return Verdict(ok=True)

    if isinstance(cert, RainbowPath):
        path = cert.path
        if len(path) < 2:
            return Verdict(ok=False, reason="too-short")
        if any(not 0 <= v < coloring.n for v in path):
            return Verdict(ok=False, reason="vertex-out-of-range")
        if len(set(path)) != len(path):
            return Verdict(ok=False, reason="not-injective")
        seen = set()
        for a, b in zip(path, path[1:]):
            c = coloring.color_of(a, b)
            if c in seen:
                return Verdict(ok=False, reason="repeated-color")
            seen.add(c)
        if t is not None and len(path) - 1 < t:
            return Verdict(ok=False, reason="too-short")
        return Verdict(ok=True)

    if isinstance(cert, ProperEmbedding):
        problem = _check_map(coloring, tree, cert.mapping)
        if problem:
            return Verdict(ok=False, reason=problem)
        at_vertex = {v: set() for v in range(tree.vertex_count)}
        for a, b in tree.edges:
            c = coloring.color_of(cert.mapping[a], cert.mapping[b])
            for end in (a, b):
                if c in at_vertex[end]:
                    return Verdict(ok=False, reason="adjacent-same-color")
                at_vertex[end].add(c)
        return Verdict(ok=True)

    return Verdict(ok=False, reason="unknown-variant")


def verify_certificate(
    coloring: EdgeColoring,
    tree: Optional[TreeSpec],
    t: Optional[int],
    cert,
) -> bool:
    return check_certificate(coloring, tree, t, cert).ok
