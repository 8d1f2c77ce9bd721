"""
Longest rainbow path by depth-first search.

Colors and on-path vertices are bitmasks. Branches try the globally rarest
colors first, and the search stops early once a path reaches the palette
bound (a rainbow path never has more edges than colors).

A path and its reverse are the same path, so the search from a start
vertex only keeps paths ending above it and backs off once every free
vertex lies below it.
"""
import logging
from typing import List, Optional

from ..config import ORACLE_NODE_BUDGET
from ..core.coloring import EdgeColoring
from ..core.verify import verify_certificate
from ..errors import InvariantViolation
from ..models import OracleResult, RainbowPath

logger = logging.getLogger(__name__)


class _Stop(Exception):
    pass


def longest_rainbow_path_exact(
    coloring: EdgeColoring,
    cap: Optional[int] = None,
    budget: int = ORACLE_NODE_BUDGET,
) -> OracleResult:
    n = coloring.n
    if n < 2:
        return OracleResult(status="exact", value=0, witness=list(range(n)))
    M = coloring.matrix()
    bound = min(coloring.k, n - 1)
    if cap is not None:
        bound = min(bound, cap)

    freq = coloring.class_sizes()
    neighbors = [
        sorted((w for w in range(n) if w != v), key=lambda w, v=v: (freq[M[v, w]], w))
        for v in range(n)
    ]
    best: List[int] = [0]
    nodes = 0

    def dfs(path: List[int], used: int, on_path: int, above: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise _Stop("budget")
        if len(path) > len(best) and path[-1] >= path[0]:
            best = list(path)
            if len(best) - 1 >= bound:
                raise _Stop("bound")
        if not above & ~on_path:
            return
        v = path[-1]
        for w in neighbors[v]:
            if on_path >> w & 1:
                continue
            c = int(M[v, w])
            if used >> c & 1:
                continue
            path.append(w)
            dfs(path, used | (1 << c), on_path | (1 << w), above)
            path.pop()

    try:
        everything = (1 << n) - 1
        for start in range(n):
            dfs([start], 0, 1 << start, everything & ~((1 << (start + 1)) - 1))
    except _Stop as stop:
        if stop.args[0] == "budget":
            logger.info("rainbow path search hit the %d node budget", budget)
            return OracleResult(status="unknown", value=None, witness=best, nodes=nodes)

    if len(best) > 1 and not verify_certificate(coloring, None, None, RainbowPath(path=best)):
        raise InvariantViolation("oracle", "rainbow witness failed verification")
    return OracleResult(status="exact", value=len(best) - 1, witness=best, nodes=nodes)
