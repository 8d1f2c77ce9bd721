import json
from pathlib import Path

from ramsey.main import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, run


def _generate(tmp_path, name, *args):
    path = tmp_path / name
    assert run(["generate", *args, "-o", str(path)]) == EXIT_OK
    return str(path)


def test_generate_to_stdout(capsys):
    assert run(["-q", "generate", "lexical", "--n", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == "KCOLOR 1 4\n1 2 3 2 3 3\n"


def test_generate_then_profile(tmp_path, capsys):
    coloring = _generate(tmp_path, "a3.kcolor", "affine", "--q", "3")
    capsys.readouterr()
    assert run(["oracle", coloring, "--task", "mono-profile"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4
    assert all(r["components"] == 3 and r["all_cliques"] for r in rows)


def test_extract_and_verify_round_trip(tmp_path, capsys):
    """
    extract on affine(5) answers with a mono path, and verify accepts it.

    Expectation:
    - extract exits 0 and writes the document and the trace
    - verify exits 0; a tampered map exits 1
    """
    coloring = _generate(tmp_path, "a5.kcolor", "affine", "--q", "5")
    cert_path = tmp_path / "cert.json"
    trace_path = tmp_path / "trace.json"
    code = run([
        "extract", coloring, "--tree", "path:3", "--t", "7", "--seed", "1",
        "-o", str(cert_path), "--trace", str(trace_path),
    ])
    assert code == EXIT_OK
    doc = json.loads(cert_path.read_text())
    assert doc["certificate"]["variant"] == "MonoEmbedding"
    assert len(doc["certificate"]["map"]) == 4
    assert doc["t"] == 7 and doc["seed"] == 1
    trace = json.loads(trace_path.read_text())
    assert trace["outcome"] == "MonoEmbedding"
    assert trace["seed"] == 1

    capsys.readouterr()
    assert run(["verify", str(cert_path), coloring]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"ok": True, "reason": None}

    doc["certificate"]["map"] = [0, 0, 0, 0]
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(doc))
    assert run(["verify", str(tampered), coloring]) == EXIT_NEGATIVE
    assert json.loads(capsys.readouterr().out)["reason"] == "not-injective"


def test_documents_carry_file_labels(tmp_path, capsys):
    """K_30 in the single file label 9: the document names 9, not dense id 0."""
    coloring = tmp_path / "mono.kcolor"
    coloring.write_text("KCOLOR 1 30\n" + " ".join(["9"] * 435) + "\n")
    cert_path = tmp_path / "cert.json"
    assert run(["extract", str(coloring), "--tree", "path:3", "--t", "5", "--seed", "0", "-o", str(cert_path)]) == EXIT_OK
    doc = json.loads(cert_path.read_text())
    assert doc["certificate"]["variant"] == "MonoEmbedding"
    assert doc["certificate"]["color"] == 9

    capsys.readouterr()
    assert run(["verify", str(cert_path), str(coloring)]) == EXIT_OK
    doc["certificate"]["color"] = 0
    relabeled = tmp_path / "relabeled.json"
    relabeled.write_text(json.dumps(doc))
    assert run(["verify", str(relabeled), str(coloring)]) == EXIT_NEGATIVE
    assert json.loads(capsys.readouterr().out.splitlines()[-1])["reason"] == "unknown-color"


def test_verify_bare_certificate_with_overrides(tmp_path, capsys):
    coloring = _generate(tmp_path, "lex.kcolor", "lexical", "--n", "6")
    cert = tmp_path / "path.json"
    cert.write_text(json.dumps({"variant": "RainbowPath", "path": [0, 1, 2, 3]}))
    assert run(["verify", str(cert), coloring, "--t", "3"]) == EXIT_OK
    assert run(["verify", str(cert), coloring, "--t", "4"]) == EXIT_NEGATIVE


def test_extract_failure_exits_one(tmp_path):
    coloring = _generate(tmp_path, "a3.kcolor", "affine", "--q", "3")
    out = tmp_path / "cert.json"
    assert run(["extract", coloring, "--tree", "path:3", "--t", "7", "--seed", "1", "-o", str(out)]) == EXIT_NEGATIVE
    assert json.loads(out.read_text())["certificate"]["variant"] == "Failure"


def test_usage_and_input_errors(tmp_path):
    coloring = _generate(tmp_path, "a3.kcolor", "affine", "--q", "3")
    assert run(["extract", coloring, "--tree", "path:3", "--t", "7"]) == EXIT_ERROR
    assert run(["extract", str(tmp_path / "missing.kcolor"), "--tree", "path:3", "--t", "7", "--seed", "1"]) == EXIT_ERROR
    garbage = tmp_path / "bad.kcolor"
    garbage.write_text("not a coloring\n")
    assert run(["extract", str(garbage), "--tree", "path:3", "--t", "7", "--seed", "1"]) == EXIT_ERROR
    assert run(["extract", coloring, "--tree", "cycle:3", "--t", "7", "--seed", "1"]) == EXIT_ERROR
    assert run(["generate", "random", "--n", "10", "--k", "2"]) == EXIT_ERROR
    assert run(["generate", "affine", "--q", "4"]) == EXIT_ERROR
    assert run(["--help"]) == EXIT_OK


def test_generate_grid_with_sidecar(tmp_path):
    meta = tmp_path / "meta.json"
    _generate(tmp_path, "g.kcolor", "grid", "--h", "2", "--t", "3", "--s", "3", "--connectors", "2", "--meta", str(meta))
    payload = json.loads(meta.read_text())
    assert payload["spec"]["connectors"] == 2
    assert payload["parts"] == [[0], [1], [2], [3]]
    assert payload["connector_scope"] == [4, 5]


def test_generate_subsample(tmp_path):
    base = _generate(tmp_path, "a7.kcolor", "affine", "--q", "7")
    sub = _generate(tmp_path, "sub.kcolor", "subsample", "--input", base, "--p", "0.5", "--seed", "2")
    header = Path(sub).read_text().splitlines()[0].split()
    assert header[0] == "KCOLOR"
    assert 2 <= int(header[2]) <= 49


def test_median_order_random_and_arcs(tmp_path, capsys):
    assert run(["median-order", "--random", "6", "--seed", "1"]) == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert sorted(result["order"]) == list(range(6))
    assert result["feedback_property"] is True

    arcs = tmp_path / "arcs.json"
    arcs.write_text(json.dumps({"n": 3, "arcs": [[0, 1], [1, 2], [2, 0]]}))
    assert run(["oracle", str(arcs), "--task", "median-exact"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["forward_count"] == 2
    assert run(["median-order", str(arcs), "--seed", "0"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["forward_count"] == 2

    assert run(["median-order", str(arcs)]) == EXIT_ERROR
    assert run(["median-order", "--random", "6"]) == EXIT_ERROR
    assert run(["median-order"]) == EXIT_ERROR


def test_oracle_tasks(tmp_path, capsys):
    lex = _generate(tmp_path, "lex.kcolor", "lexical", "--n", "6")
    capsys.readouterr()
    assert run(["oracle", lex, "--task", "rainbow-path"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["value"] == 5
    assert run(["oracle", lex, "--task", "max-colors"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["max_distinct_colors"] == 5
    assert run(["oracle", lex, "--task", "tree-contain", "--tree", "star:3", "--color", "4"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["value"] == 1
    assert run(["oracle", lex, "--task", "tree-contain", "--tree", "star:3"]) == EXIT_ERROR
    assert run(["oracle", lex, "--task", "rainbow-path", "--budget", "2"]) == EXIT_NEGATIVE


def test_proper_command(tmp_path):
    coloring = _generate(tmp_path, "r.kcolor", "random", "--n", "20", "--k", "3", "--seed", "1")
    out = tmp_path / "proper.json"
    assert run(["proper", coloring, "--tree-s", "path:2", "--tree-t", "path:2", "-o", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["certificate"]["variant"] in ("MonoEmbedding", "ProperEmbedding")


def test_bench_command(tmp_path):
    out = tmp_path / "bench.json"
    code = run([
        "bench", "--fixture", "lexical:60", "--tree", "path:3", "--t", "5",
        "--mode", "opportunistic", "--seed", "0", "--format", "json", "-o", str(out),
    ])
    assert code == EXIT_OK
    rows = json.loads(out.read_text())
    assert rows[0]["outcome"] == "RainbowPath"
    assert rows[0]["verified"] is True
    assert run(["bench", "--fixture", "lexical:60"]) == EXIT_ERROR
