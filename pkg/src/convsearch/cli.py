"""Command line entry point.

Subcommands: index build, serve, eval retrieval, eval rewrites,
eval answers, stub-backend. Exit codes: 0 success, 1 usage error,
2 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import evalharness, index as index_mod, stub_backend
from .config import load_config
from .metrics import load_qrels
from .service import ServiceState, serve

INDEX_FILENAME = "index.bin"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convsearch")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="index management")
    index_sub = p_index.add_subparsers(dest="index_command", required=True)
    p_build = index_sub.add_parser("build", help="build an index from a passage file")
    p_build.add_argument("--input", required=True)
    p_build.add_argument("--format", choices=["tsv_id_text", "jsonl"], default="tsv_id_text")
    p_build.add_argument("--out", required=True, help="output directory")

    p_serve = sub.add_parser("serve", help="run the assistant HTTP service")
    p_serve.add_argument("--config", default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8080)

    p_eval = sub.add_parser("eval", help="batch evaluation")
    eval_sub = p_eval.add_subparsers(dest="eval_command", required=True)

    p_ret = eval_sub.add_parser("retrieval")
    p_ret.add_argument("--config", default=None)
    p_ret.add_argument("--topics", required=True)
    p_ret.add_argument("--qrels", required=True)
    p_ret.add_argument("--mode", choices=["raw", "rewritten", "manual"], default="rewritten")
    p_ret.add_argument("--rerank", action="store_true")
    p_ret.add_argument("--run-out", default=None, help="TREC run file to write")
    p_ret.add_argument("--report-out", default=None, help="TSV report to write")

    p_rw = eval_sub.add_parser("rewrites")
    p_rw.add_argument("--config", default=None)
    p_rw.add_argument("--input", required=True)

    p_ans = eval_sub.add_parser("answers")
    p_ans.add_argument("--config", default=None)
    p_ans.add_argument("--topics", required=True)
    p_ans.add_argument("--qrels", required=True)
    p_ans.add_argument("--sweep", default="20,40,60,80,100,120",
                       help="comma-separated minimum lengths")
    p_ans.add_argument("--no-rerank", action="store_true")

    p_stub = sub.add_parser("stub-backend", help="run the deterministic stub model server")
    p_stub.add_argument("--host", default="127.0.0.1")
    p_stub.add_argument("--port", type=int, default=8090)

    return parser


def _load_index(index_path: str | None) -> index_mod.Index:
    if not index_path:
        raise RuntimeError("no index_path configured")
    path = Path(index_path)
    if path.is_dir():
        path = path / INDEX_FILENAME
    if not path.exists():
        raise RuntimeError(f"index not found: {path}")
    return index_mod.load(path)


def _run(args: argparse.Namespace) -> int:
    if args.command == "index":
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        built = index_mod.build_index(index_mod.ingest_collection(args.input, args.format))
        index_mod.save(built, out_dir / INDEX_FILENAME)
        print(f"indexed {built.doc_count} passages -> {out_dir / INDEX_FILENAME}")
        return 0

    if args.command == "stub-backend":
        stub_backend.serve_forever(args.host, args.port)
        return 0

    if args.command == "serve":
        config, index_path = load_config(args.config)
        state = ServiceState(index=_load_index(index_path), config=config)
        serve(state, args.host, args.port)
        return 0

    if args.command == "eval":
        config, index_path = load_config(args.config)
        if args.eval_command == "rewrites":
            bleu = evalharness.eval_rewrites(config, args.input)
            print(f"BLEU-4: {bleu:.2f}")
            return 0

        loaded = _load_index(index_path)
        qrels = load_qrels(args.qrels)
        if args.eval_command == "retrieval":
            report, _ = evalharness.eval_retrieval(
                loaded, config, args.topics, qrels,
                mode=args.mode, use_rerank=args.rerank, run_path=args.run_out,
            )
            output = report.to_tsv()
            if args.report_out:
                Path(args.report_out).write_text(output, encoding="utf-8")
            print(output, end="")
            return 0
        if args.eval_command == "answers":
            sweep = [int(x) for x in args.sweep.split(",") if x]
            rows = evalharness.eval_answers(
                loaded, config, args.topics, qrels, sweep,
                use_rerank=not args.no_rerank,
            )
            print("generator\tmin_length\trouge_l\tmeteor_lite\tturns")
            for row in rows:
                print(f"{row['generator']}\t{row['min_length']}\t"
                      f"{row['rouge_l']:.6f}\t{row['meteor_lite']:.6f}\t{row['turns']}")
            return 0

    return 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    try:
        return _run(args)
    except KeyboardInterrupt:
        return 130
    except Exception as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
