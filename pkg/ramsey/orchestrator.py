"""
Full extraction pipeline: a monochromatic copy of S or a rainbow t-edge path.

1. Structured subgraph (robust vertices, anchored path, parts, repairs)
2. Rogue pruning
3. Median order on the pruned U
4. Greedy rogue matching
5. Dyadic gap selection
6. Extension of P_1..P_l into S_1
7. Randomized tail extension through S_2
8. Linking

Any stage may finish early with a MonoEmbedding or a RainbowPath. Every
certificate leaving this module has been checked against the coloring.
"""
import logging
import time
from typing import Dict, Optional, Tuple

from .config import PipelineConstants
from .core.coloring import EdgeColoring
from .core.trees import TreeSpec
from .core.verify import check_certificate
from .embedding.mono import mono_from_dense_color_class
from .errors import InvariantViolation, PreconditionError
from .models import Failure, MonoEmbedding, PipelineTrace, RainbowPath
from .ordering.median import compute_median_order
from .rainbow.extension import extend_paths_to_S1, link_extension, randomized_tail_extension
from .rainbow.matching import dyadic_gap_select, greedy_rogue_matching, prune_rogue_degrees
from .rainbow.structured import build_structured_subgraph
from .rainbow.subgraph import StructuredSubgraph

logger = logging.getLogger(__name__)

MODES = ("strict", "opportunistic")


class _Stage:
    """Times a stage into the timings dict and remembers the last stage entered."""

    def __init__(self, timings: Dict[str, float]):
        self.timings = timings
        self.name = "robust"
        self._start = 0.0

    def __call__(self, name: str) -> "_Stage":
        self.name = name
        return self

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.timings[self.name] = self.timings.get(self.name, 0.0) + time.perf_counter() - self._start
        return False


def _short(stage: str, cert: RainbowPath, t: int):
    if cert.length >= t:
        return cert
    return Failure(stage=stage, reason=f"linked path has {cert.length} < {t} edges")


def _run_stages(
    coloring: EdgeColoring,
    S: TreeSpec,
    t: int,
    seed: int,
    constants: PipelineConstants,
    trace: PipelineTrace,
    stage: _Stage,
):
    s = S.edge_count
    if t == 1:
        trace.branch = "single-edge"
        return RainbowPath(path=[0, 1])
    if s == 0:
        return mono_from_dense_color_class(coloring, S, coloring.palette)

    with stage("lemma2"):
        ss = build_structured_subgraph(coloring, S, t, constants, seed, trace)
    if not isinstance(ss, StructuredSubgraph):
        if isinstance(ss, Failure):
            stage.name = ss.stage
        return ss

    with stage("prune"):
        pruned = prune_rogue_degrees(ss, coloring, S, t, constants)
    if isinstance(pruned, MonoEmbedding):
        trace.branch = "rogue-prune"
        return pruned
    trace.pruned_size = pruned.size
    if pruned.size == 0:
        return Failure(stage="prune", reason="pruning removed all of U")

    with stage("matching"):
        sigma = compute_median_order(pruned.orientation, seed)
        trace.forward_count = sigma.forward_count
        ms = greedy_rogue_matching(pruned, coloring, sigma, s, t, constants)
    if isinstance(ms, RainbowPath):
        trace.branch = "matching-overflow"
        return _short("matching", ms, t)
    trace.f = ms.f

    with stage("dyadic"):
        ell = dyadic_gap_select(ms, s, t, constants)
    if ell is None:
        floor = constants.pigeonhole_factor * s * t
        return Failure(stage="dyadic", reason=f"no gap of {constants.gap_factor * s * t}; |U|={pruned.size}, need about {floor} log t")
    trace.ell = ell

    with stage("extend"):
        es = extend_paths_to_S1(ms, ell, pruned, coloring, s, t, constants)
    if isinstance(es, RainbowPath):
        trace.branch = "extension-overflow"
        return _short("extend", es, t)

    with stage("randomized"):
        paths = randomized_tail_extension(es, pruned, s, t, seed, constants=constants)
    trace.bin_count = len(es.bins)
    trace.retries = es.retries
    if paths is None:
        return Failure(stage="randomized", reason=f"no retry out of {es.retries} reached {t} new vertices")

    with stage("link"):
        cert = link_extension(pruned, coloring, ms, paths, t)
    return _short("link", cert, t)


def extract_traced(
    coloring: EdgeColoring,
    S: TreeSpec,
    t: int,
    mode: str = "opportunistic",
    seed: int = 0,
    constants: Optional[PipelineConstants] = None,
) -> Tuple[object, PipelineTrace, Dict[str, float]]:
    """extract, also returning the per-stage trace and wall times in seconds."""
    constants = constants or PipelineConstants.default()
    if mode not in MODES:
        raise PreconditionError(f"mode must be one of {MODES}, got {mode!r}")
    if t < 1:
        raise PreconditionError(f"t must be >= 1, got {t}")
    n, s = coloring.n, S.edge_count
    if mode == "strict":
        if not constants.is_default():
            raise PreconditionError("strict mode runs only with the default constants")
        need = constants.strict_order(s, t)
        if n < need:
            raise PreconditionError(f"strict mode needs n >= {need} for s={s}, t={t}; got {n}")
    elif n < constants.lemma2_factor * s * t:
        logger.info("n=%d is below %d st; structured stages may stop early", n, constants.lemma2_factor)

    trace = PipelineTrace(seed=seed, mode=mode, n=n, s=s, t=t, constants_digest=constants.digest())
    timings: Dict[str, float] = {}
    stage = _Stage(timings)
    logger.info("extract n=%d k=%d s=%d t=%d mode=%s seed=%d", n, coloring.k, s, t, mode, seed)

    try:
        cert = _run_stages(coloring, S, t, seed, constants, trace, stage)
    except InvariantViolation as exc:
        if mode == "strict":
            logger.error("invariant violated in %s: %s", exc.stage, exc.message)
            raise
        logger.warning("invariant violated in %s: %s", exc.stage, exc.message)
        cert = Failure(stage=exc.stage, reason=exc.message)

    if cert is None:
        cert = Failure(stage=stage.name, reason="no certificate")

    if isinstance(cert, Failure) and mode == "opportunistic":
        logger.warning("stage %s could not proceed: %s; sweeping color classes", cert.stage, cert.reason)
        swept = mono_from_dense_color_class(coloring, S, coloring.palette)
        if swept is not None:
            trace.branch = "fallback-sweep"
            cert = swept

    if not isinstance(cert, Failure):
        verdict = check_certificate(coloring, S, t, cert)
        if not verdict.ok:
            raise InvariantViolation("verify", f"{cert.variant} rejected: {verdict.reason}")

    trace.outcome = cert.variant
    if isinstance(cert, Failure):
        trace.stage = cert.stage
        if mode == "strict":
            logger.error("strict extract failed in %s: %s", cert.stage, cert.reason)
    logger.info("extract outcome: %s", cert.variant)
    return cert, trace, timings


def extract(
    coloring: EdgeColoring,
    S: TreeSpec,
    t: int,
    mode: str = "opportunistic",
    seed: int = 0,
    constants: Optional[PipelineConstants] = None,
):
    cert, _, _ = extract_traced(coloring, S, t, mode, seed, constants)
    return cert
