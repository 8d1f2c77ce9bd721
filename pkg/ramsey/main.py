"""
Command-line entry point.

    python -m ramsey generate affine --q 3 -o a.kcolor
    python -m ramsey extract a.kcolor --tree path:3 --t 7 --seed 1
    python -m ramsey verify cert.json a.kcolor

Exit codes: 0 success, 1 a Failure or a rejected certificate, 2 usage, IO or
format errors. Documents go to stdout (or -o), logs to stderr.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .bench import run_bench, write_table
from .constructions.affine import affine_plane_coloring
from .constructions.baselines import lexical_coloring, random_coloring, subsample
from .constructions.grid import GridConstructionSpec, grid_construction, grid_metadata
from .constructions.layered import layered_coloring
from .core.graph import color_class_graph
from .core.io import load_coloring, save_coloring
from .core.trees import load_tree
from .core.verify import check_certificate
from .errors import FormatError, RamseyError
from .models import CertificateAdapter, CertificateDocument, Failure, MonoEmbedding
from .oracle.containment import tree_containment_exact
from .oracle.median_exact import median_order_exact
from .oracle.profiles import max_distinct_colors_at_vertex, mono_component_profile
from .oracle.rainbow_path import longest_rainbow_path_exact
from .ordering.median import check_feedback_property, compute_median_order
from .ordering.orientation import PartialOrientation, random_tournament
from .orchestrator import MODES, extract_traced
from .proper.recursion import embed_proper_or_mono

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

ORACLE_TASKS = ["rainbow-path", "tree-contain", "median-exact", "mono-profile", "max-colors"]


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _document(cert, coloring, tree=None, t=None, seed=None) -> str:
    """Documents name colors by their file labels, not dense ids."""
    if isinstance(cert, MonoEmbedding):
        cert = cert.model_copy(update={"color": coloring.label_of(cert.color)})
    doc = CertificateDocument(certificate=cert, tree=tree, t=t, seed=seed)
    return doc.model_dump_json(by_alias=True, indent=2)


def _load_orientation(path: str) -> PartialOrientation:
    """{"n": 5, "arcs": [[u, v], ...], "undirected": [[u, v], ...]}"""
    try:
        payload = json.loads(Path(path).read_text())
        return PartialOrientation.from_arcs(
            int(payload["n"]),
            [tuple(a) for a in payload.get("arcs", [])],
            [tuple(a) for a in payload.get("undirected", [])],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"cannot read orientation {path!r}: {exc}") from exc


# generate

def cmd_generate(args) -> int:
    if args.kind == "affine":
        coloring = affine_plane_coloring(args.q)
    elif args.kind == "lexical":
        coloring = lexical_coloring(args.n)
    elif args.kind == "layered":
        coloring = layered_coloring(args.s, args.t)
    elif args.kind == "random":
        coloring = random_coloring(args.n, args.k, args.seed)
    elif args.kind == "subsample":
        coloring = subsample(load_coloring(args.input), args.p, args.seed)
    else:
        spec = GridConstructionSpec(h=args.h, t=args.t, s=args.s, connectors=args.connectors)
        coloring, ss = grid_construction(spec)
        if args.meta:
            Path(args.meta).write_text(grid_metadata(spec, ss).model_dump_json(indent=2) + "\n")
    logger.info("generated %s: n=%d k=%d", args.kind, coloring.n, coloring.k)
    save_coloring(coloring, args.output if args.output else sys.stdout)
    return EXIT_OK


# extract / proper / verify

def cmd_extract(args) -> int:
    coloring = load_coloring(args.coloring)
    tree = load_tree(args.tree)
    cert, trace, _ = extract_traced(coloring, tree, args.t, args.mode, args.seed)
    if args.trace:
        Path(args.trace).write_text(trace.model_dump_json(indent=2) + "\n")
    _emit(_document(cert, coloring, tree, args.t, args.seed), args.output)
    return EXIT_NEGATIVE if isinstance(cert, Failure) else EXIT_OK


def cmd_proper(args) -> int:
    coloring = load_coloring(args.coloring)
    S, T = load_tree(args.tree_s), load_tree(args.tree_t)
    cert = embed_proper_or_mono(coloring, S, T)
    # MonoEmbedding answers S, ProperEmbedding answers T
    target = T if cert.variant == "ProperEmbedding" else S
    _emit(_document(cert, coloring, target), args.output)
    return EXIT_NEGATIVE if isinstance(cert, Failure) else EXIT_OK


def cmd_verify(args) -> int:
    coloring = load_coloring(args.coloring)
    payload = json.loads(Path(args.certificate).read_text())
    if "certificate" in payload:
        doc = CertificateDocument.model_validate(payload)
        cert, tree, t = doc.certificate, doc.tree, doc.t
    else:
        cert, tree, t = CertificateAdapter.validate_python(payload), None, None
    if isinstance(cert, MonoEmbedding):
        dense = coloring.color_for_label(cert.color)
        cert = cert.model_copy(update={"color": -1 if dense is None else dense})
    if args.tree:
        tree = load_tree(args.tree)
    if args.t is not None:
        t = args.t
    verdict = check_certificate(coloring, tree, t, cert)
    _emit(verdict.model_dump_json(), None)
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


# oracle / median-order

def cmd_oracle(args) -> int:
    task = args.task
    if task == "median-exact":
        g = _load_orientation(args.input)
        count, order = median_order_exact(g)
        _emit(json.dumps({"forward_count": count, "order": order}), args.output)
        return EXIT_OK

    coloring = load_coloring(args.input)
    if task == "mono-profile":
        df = mono_component_profile(coloring)
        _emit(df.to_json(orient="records", indent=2), args.output)
        return EXIT_OK
    if task == "max-colors":
        _emit(json.dumps({"max_distinct_colors": max_distinct_colors_at_vertex(coloring)}), args.output)
        return EXIT_OK
    if task == "rainbow-path":
        result = longest_rainbow_path_exact(coloring, cap=args.cap, budget=args.budget)
    else:
        if args.tree is None or args.color is None:
            raise FormatError("tree-contain needs --tree and --color")
        host = color_class_graph(coloring, args.color)
        result = tree_containment_exact(host, load_tree(args.tree), budget=args.budget)
    _emit(result.model_dump_json(indent=2), args.output)
    return EXIT_OK if result.status == "exact" else EXIT_NEGATIVE


def cmd_median_order(args) -> int:
    if args.random is None and not args.arcs:
        raise FormatError("give an arcs file or --random N --seed S")
    if args.seed is None:
        raise FormatError("median-order needs --seed")
    g = random_tournament(args.random, args.seed) if args.random is not None else _load_orientation(args.arcs)
    ordering = compute_median_order(g, args.seed, restarts=args.restarts)
    _emit(json.dumps({
        "order": ordering.order.tolist(),
        "forward_count": ordering.forward_count,
        "feedback_property": check_feedback_property(g, ordering),
    }), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    tree = load_tree(args.tree)
    df = run_bench(args.fixture, tree, args.t, args.mode, args.seed, args.jobs)
    write_table(df, args.output, args.format)
    return EXIT_OK if bool(df["verified"].all()) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramsey", description="Monochromatic trees and rainbow paths in edge colorings")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a coloring file")
    kinds = gen.add_subparsers(dest="kind", required=True)
    p = kinds.add_parser("affine")
    p.add_argument("--q", type=int, required=True)
    p = kinds.add_parser("lexical")
    p.add_argument("--n", type=int, required=True)
    p = kinds.add_parser("layered")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p = kinds.add_parser("random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p = kinds.add_parser("subsample")
    p.add_argument("--input", required=True, help="coloring file to subsample")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p = kinds.add_parser("grid")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--connectors", type=int, default=0)
    p.add_argument("--meta", help="write the structured subgraph sidecar here")
    for p in kinds.choices.values():
        p.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_generate)

    p = sub.add_parser("extract", help="monochromatic S or rainbow t-edge path")
    p.add_argument("coloring")
    p.add_argument("--tree", required=True, help="path:s, star:s, spider:a,b,c or a JSON file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="opportunistic")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trace", help="write the pipeline trace here")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("proper", help="monochromatic S or properly colored T")
    p.add_argument("coloring")
    p.add_argument("--tree-s", required=True)
    p.add_argument("--tree-t", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_proper)

    p = sub.add_parser("verify", help="check a certificate against a coloring")
    p.add_argument("certificate")
    p.add_argument("coloring")
    p.add_argument("--tree")
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact reference computations")
    p.add_argument("input", help="coloring file, or an arcs JSON for median-exact")
    p.add_argument("--task", choices=ORACLE_TASKS, required=True)
    p.add_argument("--tree")
    p.add_argument("--color", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--budget", type=int, default=100_000_000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("median-order", help="local median order of an orientation")
    p.add_argument("arcs", nargs="?")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_median_order)

    p = sub.add_parser("bench", help="time extract over fixtures")
    p.add_argument("--fixture", action="append", help="repeatable; defaults to the n=14400 suite")
    p.add_argument("--tree", default="path:2")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--mode", choices=MODES, default="strict")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        return args.func(args)
    except (RamseyError, OSError, ValidationError, json.JSONDecodeError) as exc:
        logger.error("%s", exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(run())
