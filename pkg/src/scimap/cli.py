"""Command line interface: index a corpus, generate a network map, or
serve the HTTP API.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from scimap import corpus, export, index, service
from scimap.enrich import LlmConfig
from scimap.service import NetworkRequest, PerimeterRegistry

DEFAULT_INDEX_PATH = "scimap.index"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scimap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build an index snapshot from a JSONL corpus")
    p_index.add_argument("corpus", help="path to the JSONL corpus file")
    p_index.add_argument("--index-path", default=DEFAULT_INDEX_PATH)
    p_index.add_argument("--max-authors", type=int, default=corpus.DEFAULT_MAX_AUTHORS)
    p_index.add_argument(
        "--merge-labels",
        action="store_true",
        help="fold entity labels to the most frequent label per id",
    )
    p_index.add_argument("--report", help="write the ingest report JSON here (default: stderr)")

    p_network = sub.add_parser("network", help="run the pipeline and write a VOSviewer map")
    p_network.add_argument("--q", default="", help="query text (empty matches all)")
    p_network.add_argument("--model", default="topic", choices=corpus.ENTITY_TYPES)
    p_network.add_argument("--max-nodes", type=int, default=300)
    p_network.add_argument("--top-links", type=int, default=2000)
    p_network.add_argument("--seed", type=int)
    p_network.add_argument("--labeling", default="fallback", choices=("llm", "fallback", "off"))
    p_network.add_argument("--llm-fixture", help="replay a recorded labeling response")
    p_network.add_argument("--index-path", default=DEFAULT_INDEX_PATH)
    p_network.add_argument("--out", default="map.json")
    p_network.add_argument("--diagnostics", action="store_true", help="print diagnostics JSON")

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--index-path", default=DEFAULT_INDEX_PATH)
    p_serve.add_argument("--perimeters-path", help="persist perimeters to this JSON file")
    p_serve.add_argument("--llm-fixture", help="replay a recorded labeling response")
    return parser


def _cmd_index(args: argparse.Namespace) -> int:
    report = corpus.IngestReport()
    pubs = list(corpus.load_corpus(args.corpus, args.max_authors, report))
    if args.merge_labels:
        pubs = corpus.fold_labels(pubs)
    ix = index.build_index(pubs)
    index.save_index(ix, args.index_path)
    corpus.write_report(report, args.report)
    print(f"indexed {len(ix.docs)} publications -> {args.index_path}")
    return 0


def _cmd_network(args: argparse.Namespace) -> int:
    ix = index.load_index(args.index_path)
    req = NetworkRequest(
        q=args.q,
        model=args.model,
        max_nodes=args.max_nodes,
        top_links=args.top_links,
        seed=args.seed,
        labeling=args.labeling,
    )
    llm_cfg = LlmConfig(fixture_path=args.llm_fixture)
    body = service.handle_get_network(ix, req, llm_cfg=llm_cfg)
    doc = {"network": body["network"]}
    violations = export.validate(doc)
    if violations:
        print("invalid export:", *violations, sep="\n  ", file=sys.stderr)
        return 2
    Path(args.out).write_text(export.serialize(doc) + "\n", encoding="utf-8")
    if args.diagnostics:
        print(json.dumps(body["diagnostics"], ensure_ascii=False))
    print(f"wrote {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    ix = index.load_index(args.index_path)
    registry = PerimeterRegistry.open(args.perimeters_path)
    llm_cfg = LlmConfig(fixture_path=args.llm_fixture)
    app = service.build_app(ix, registry, llm_cfg)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; map --help passthrough to 0
        return 0 if exc.code == 0 else 1
    try:
        if args.command == "index":
            return _cmd_index(args)
        if args.command == "network":
            return _cmd_network(args)
        if args.command == "serve":
            return _cmd_serve(args)
        return 1
    except Exception as exc:  # runtime failures -> exit 2
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
