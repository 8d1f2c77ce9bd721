import logging

import pytest

from ramsey.bench import DEFAULT_FIXTURES, build_fixture, fixture_mode, run_bench, run_fixture
from ramsey.config import PipelineConstants
from ramsey.constructions.baselines import lexical_coloring, random_coloring
from ramsey.core.coloring import EdgeColoring
from ramsey.core.trees import TreeSpec, path_tree
from ramsey.core.verify import verify_certificate
from ramsey.errors import FormatError, PreconditionError
from ramsey.models import Failure, MonoEmbedding, RainbowPath
from ramsey.orchestrator import extract, extract_traced
from ramsey.rainbow.structured import build_structured_subgraph
from ramsey.rainbow.subgraph import StructuredSubgraph, check_property_ii, check_property_iii

logger = logging.getLogger(__name__)


def test_monochromatic_clique_falls_back_to_mono():
    """
    K_30 in one color with S = path:3, t = 5.

    Expectation:
    - no robust vertex, so the pipeline stops early
    - the opportunistic sweep embeds S in the only color
    """
    coloring = EdgeColoring.monochromatic(30)
    cert, trace, _ = extract_traced(coloring, path_tree(3), 5, seed=0)
    assert isinstance(cert, MonoEmbedding)
    assert verify_certificate(coloring, path_tree(3), None, cert)
    assert trace.branch == "fallback-sweep"
    assert trace.outcome == "MonoEmbedding"


def test_lexical_gives_rainbow_path():
    coloring = lexical_coloring(60)
    cert = extract(coloring, path_tree(3), 5, seed=0)
    assert isinstance(cert, RainbowPath)
    assert cert.length >= 5
    assert verify_certificate(coloring, None, 5, cert)


def test_affine_plane_gives_mono(affine5):
    cert = extract(affine5, path_tree(3), 7, seed=1)
    assert isinstance(cert, MonoEmbedding)
    assert verify_certificate(affine5, path_tree(3), None, cert)


def test_affine_three_has_neither(affine3):
    """Triangles cannot host path:3 and four colors cannot give 7 rainbow edges."""
    cert, trace, _ = extract_traced(affine3, path_tree(3), 7, seed=1)
    assert isinstance(cert, Failure)
    assert trace.outcome == "Failure"
    assert trace.stage == cert.stage


def test_rainbow_clique_without_targets():
    cert = extract(EdgeColoring.rainbow(12), path_tree(2), 20, seed=0)
    assert isinstance(cert, Failure)
    assert cert.stage == "robust"


def test_single_edge_and_single_vertex_targets():
    coloring = random_coloring(10, 3, seed=0)
    assert extract(coloring, path_tree(4), 1) == RainbowPath(path=[0, 1])
    cert = extract(coloring, TreeSpec(vertex_count=1), 4)
    assert isinstance(cert, MonoEmbedding)
    assert cert.mapping == [0]


def test_argument_errors():
    coloring = lexical_coloring(60)
    with pytest.raises(PreconditionError, match="mode"):
        extract(coloring, path_tree(3), 5, mode="fast")
    with pytest.raises(PreconditionError, match="t must be"):
        extract(coloring, path_tree(3), 0)
    with pytest.raises(PreconditionError, match="strict mode needs n >= 162000"):
        extract(coloring, path_tree(3), 5, mode="strict")
    with pytest.raises(PreconditionError, match="default constants"):
        extract(coloring, path_tree(3), 5, mode="strict", constants=PipelineConstants(gap_factor=10))


def test_trace_records_run_parameters():
    coloring = lexical_coloring(60)
    cert, trace, timings = extract_traced(coloring, path_tree(3), 5, seed=3)
    assert trace.seed == 3
    assert trace.mode == "opportunistic"
    assert (trace.n, trace.s, trace.t) == (60, 3, 5)
    assert trace.constants_digest == PipelineConstants.default().digest()
    assert trace.branch == "anchored-path"
    assert trace.outcome == cert.variant
    assert "lemma2" in timings


def test_non_default_constants_change_the_digest():
    custom = PipelineConstants(window_factor=4)
    assert not custom.is_default()
    assert custom.digest() != PipelineConstants.default().digest()
    _, trace, _ = extract_traced(lexical_coloring(60), path_tree(3), 5, constants=custom)
    assert trace.constants_digest == custom.digest()


def test_small_orders_log_the_structured_bound(caplog):
    with caplog.at_level(logging.INFO, logger="ramsey.orchestrator"):
        extract(lexical_coloring(60), path_tree(2), 2, seed=0)
    assert "structured stages may stop early" in caplog.text


@pytest.mark.parametrize("seed", range(5))
def test_opportunistic_random_colorings_always_certify(seed):
    coloring = random_coloring(200, 3, seed)
    cert = extract(coloring, path_tree(3), 6, seed=seed)
    assert not isinstance(cert, Failure)
    target = path_tree(3) if isinstance(cert, MonoEmbedding) else None
    assert verify_certificate(coloring, target, 6, cert)


def test_bench_fixtures():
    assert build_fixture("layered:4:3").n == 6
    with pytest.raises(FormatError):
        build_fixture("torus:3")
    with pytest.raises(FormatError):
        build_fixture("random:10")
    df = run_bench(["lexical:60", "affine:3"], path_tree(3), t=5, mode="opportunistic", seed=0)
    assert list(df["fixture"]) == ["lexical:60", "affine:3"]
    assert list(df["outcome"]) == ["RainbowPath", "Failure"]
    assert list(df["verified"]) == [True, False]
    assert df.columns[:9].tolist() == ["fixture", "n", "k", "s", "t", "mode", "seed", "outcome", "verified"]


def test_bench_reports_gate_errors():
    df = run_bench(["lexical:60"], path_tree(2), t=2, mode="strict", seed=0)
    assert df.loc[0, "outcome"] == "error"
    assert "strict mode needs" in df.loc[0, "error"]


@pytest.mark.slow
def test_strict_smoke_at_gate_order():
    """n = 14400 is exactly the strict gate for s = t = 2."""
    coloring = lexical_coloring(14400)
    cert, trace, _ = extract_traced(coloring, path_tree(2), 2, mode="strict", seed=0)
    assert isinstance(cert, RainbowPath)
    assert verify_certificate(coloring, None, 2, cert)
    assert trace.branch == "anchored-path"


def test_subsampled_fixture_below_the_gate_runs_opportunistic():
    tree = path_tree(2)
    small = build_fixture("subsample:7:0.9:1")
    assert fixture_mode("subsample:7:0.9:1", small, tree, 2, "strict") == "opportunistic"
    assert fixture_mode("subsample:7:0.9:1", small, tree, 2, "opportunistic") == "opportunistic"
    assert fixture_mode("lexical:60", lexical_coloring(60), tree, 2, "strict") == "strict"

    row = run_fixture("subsample:7:0.9:1", tree, 2, "strict", 0)
    assert row["mode"] == "opportunistic"
    assert row["outcome"] != "error"


@pytest.mark.slow
@pytest.mark.parametrize("fixture", DEFAULT_FIXTURES)
def test_strict_suite_certifies_every_fixture(fixture):
    """
    The n = 14400 suite with S = path:2, t = 2.

    Expectation:
    - every fixture yields a verified certificate
    - fixtures at the gate run strict; a subsample that drew fewer vertices
      runs opportunistic
    """
    row = run_fixture(fixture, path_tree(2), 2, "strict", 0)
    assert row["outcome"] in ("RainbowPath", "MonoEmbedding"), row.get("error")
    assert row["verified"]
    assert row["mode"] == ("strict" if row["n"] >= 14400 else "opportunistic")


SWEEP_CASES = [(s, t, k) for s, t in [(2, 3), (3, 3), (2, 4), (3, 4)] for k in sorted({3, 5, t + 2})]


@pytest.mark.slow
@pytest.mark.parametrize("s,t,k", SWEEP_CASES)
def test_opportunistic_sweep_is_sound(s, t, k):
    """
    100 random k-colorings at n = 40st.

    Expectation:
    - every certificate verifies; Failures are allowed and only logged
    - every structured subgraph the pipeline builds satisfies (ii) and (iii)
    """
    n, S = 40 * s * t, path_tree(s)
    failures = structured = 0
    for seed in range(100):
        coloring = random_coloring(n, k, seed)
        cert, _, _ = extract_traced(coloring, S, t, mode="opportunistic", seed=seed)
        if isinstance(cert, Failure):
            failures += 1
        else:
            target = S if isinstance(cert, MonoEmbedding) else None
            assert verify_certificate(coloring, target, t, cert), f"seed {seed}"

        ss = build_structured_subgraph(coloring, S, t, seed=seed)
        if isinstance(ss, StructuredSubgraph):
            structured += 1
            assert check_property_ii(ss, coloring) == [], f"seed {seed}"
            assert check_property_iii(ss, coloring, t) == [], f"seed {seed}"
    logger.info(
        "s=%d t=%d k=%d n=%d: Failure rate %.2f, %d structured subgraphs",
        s, t, k, n, failures / 100, structured,
    )
