"""
Benchmark harness for extract.

Fixtures are named generator calls ("lexical:14400", "random:14400:8:1",
"affine:127", "subsample:127:0.89:1", "layered:4:3") or coloring file paths.
Each fixture runs in its own process when jobs > 1; the table has one row per
fixture with per-stage wall times, peak RSS, outcome and verification.
"""
import logging
import os
import resource
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

import pandas as pd

from .config import PipelineConstants
from .constructions.affine import affine_plane_coloring
from .constructions.baselines import lexical_coloring, random_coloring, subsample
from .constructions.layered import layered_coloring
from .core.coloring import EdgeColoring
from .core.io import load_coloring
from .core.trees import TreeSpec, parse_tree_preset
from .core.verify import verify_certificate
from .errors import FormatError, RamseyError
from .orchestrator import extract_traced

logger = logging.getLogger(__name__)

DEFAULT_FIXTURES = [
    "lexical:14400",
    "random:14400:8:1",
    "random:14400:8:2",
    "random:14400:8:3",
    "subsample:127:0.89:1",
]
STAGES = ["lemma2", "prune", "matching", "dyadic", "extend", "randomized", "link"]


def build_fixture(name: str) -> EdgeColoring:
    if os.path.exists(name):
        return load_coloring(name)
    kind, _, rest = name.partition(":")
    args = rest.split(":") if rest else []
    try:
        if kind == "lexical":
            return lexical_coloring(int(args[0]))
        if kind == "random":
            return random_coloring(int(args[0]), int(args[1]), int(args[2]))
        if kind == "affine":
            return affine_plane_coloring(int(args[0]))
        if kind == "subsample":
            return subsample(affine_plane_coloring(int(args[0])), float(args[1]), int(args[2]))
        if kind == "layered":
            return layered_coloring(int(args[0]), int(args[1]))
    except (IndexError, ValueError) as exc:
        raise FormatError(f"bad fixture {name!r}: {exc}") from exc
    raise FormatError(f"unknown fixture {name!r}")


def _peak_rss_mb() -> float:
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # bytes on macOS, kilobytes elsewhere
    return peak / 2**20 if sys.platform == "darwin" else peak / 1024


def fixture_mode(name: str, coloring: EdgeColoring, tree: TreeSpec, t: int, mode: str) -> str:
    """
    Subsampled fixtures have a random order. They run strict only when the
    drawn order reaches the strict gate and opportunistic otherwise.
    """
    if mode != "strict" or not name.startswith("subsample:"):
        return mode
    need = PipelineConstants.default().strict_order(tree.edge_count, t)
    if coloring.n >= need:
        return mode
    logger.info("fixture %s: n=%d below the strict gate %d, running opportunistic", name, coloring.n, need)
    return "opportunistic"


def run_fixture(name: str, tree: TreeSpec, t: int, mode: str, seed: int) -> Dict:
    row: Dict = {"fixture": name, "s": tree.edge_count, "t": t, "mode": mode, "seed": seed}
    start = time.perf_counter()
    try:
        coloring = build_fixture(name)
        row["n"] = coloring.n
        row["k"] = coloring.k
        row["build"] = time.perf_counter() - start
        row["mode"] = fixture_mode(name, coloring, tree, t, mode)
        cert, trace, timings = extract_traced(coloring, tree, t, row["mode"], seed)
        row.update({stage: timings.get(stage, 0.0) for stage in STAGES})
        row["outcome"] = cert.variant
        row["branch"] = trace.branch
        row["failure_stage"] = trace.stage
        row["verified"] = verify_certificate(coloring, tree, t, cert)
    except RamseyError as exc:
        logger.warning("fixture %s: %s", name, exc)
        row["outcome"] = "error"
        row["error"] = str(exc)
        row["verified"] = False
    row["total"] = time.perf_counter() - start
    row["peak_rss_mb"] = _peak_rss_mb()
    return row


def _run_one(job) -> Dict:
    return run_fixture(*job)


def run_bench(
    fixtures: Optional[Sequence[str]] = None,
    tree: Optional[TreeSpec] = None,
    t: int = 2,
    mode: str = "strict",
    seed: int = 0,
    jobs: int = 1,
) -> pd.DataFrame:
    fixtures = list(fixtures or DEFAULT_FIXTURES)
    tree = tree or parse_tree_preset("path:2")
    work = [(name, tree, t, mode, seed) for name in fixtures]
    logger.info("bench: %d fixtures, s=%d t=%d mode=%s jobs=%d", len(work), tree.edge_count, t, mode, jobs)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows: List[Dict] = list(pool.map(_run_one, work))
    else:
        rows = [_run_one(job) for job in work]

    df = pd.DataFrame(rows)
    leading = ["fixture", "n", "k", "s", "t", "mode", "seed", "outcome", "verified"]
    return df[[c for c in leading if c in df.columns] + [c for c in df.columns if c not in leading]]


def write_table(df: pd.DataFrame, path: Optional[str], fmt: str = "csv") -> None:
    sink = path or sys.stdout
    if fmt == "json":
        df.to_json(sink, orient="records", indent=2)
        if path is None:
            sys.stdout.write("\n")
    else:
        df.to_csv(sink, index=False)
