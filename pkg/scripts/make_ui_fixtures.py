#!/usr/bin/env python3
"""Record pipeline outputs as JSON fixtures for the frontend tests.

Runs the demo conversation twice — once with the stub model backends (clean
turns) and once with fallbacks only (degraded turns) — and writes the wire
format the HTTP service emits for each turn.

    python3 scripts/make_ui_fixtures.py [--out frontend/tests/fixtures/turns.json]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from convsearch.context import ConversationSession
from convsearch.index import build_index
from convsearch.pipeline import BackendConfig, PipelineConfig, process_turn
from convsearch.service import _turn_result_json
from convsearch.stub_backend import StubServer
from _seed import SEED_PASSAGES, SEED_SCRIPT

DEFAULT_OUT = Path(__file__).parent.parent / "frontend" / "tests" / "fixtures" / "turns.json"


def record(config: PipelineConfig, index, label: str) -> list[dict]:
    session = ConversationSession(label)
    turns = []
    for query in SEED_SCRIPT:
        result = process_turn(session, query, config, index)
        turns.append(_turn_result_json(result))
    return turns


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args()

    index = build_index(SEED_PASSAGES)
    with StubServer() as server:
        backends = BackendConfig(
            rewriter_url=server.base_url,
            reranker_url=server.base_url,
            summarizer_url=server.base_url,
        )
        clean = record(
            PipelineConfig(first_stage_k=10, rerank_depth=10, backends=backends),
            index, "clean",
        )
    degraded = record(
        PipelineConfig(first_stage_k=10, rerank_depth=10), index, "degraded",
    )

    fixtures = {"clean": clean, "degraded": degraded}
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(fixtures, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {sum(len(v) for v in fixtures.values())} turns -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
