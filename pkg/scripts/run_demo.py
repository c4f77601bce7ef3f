#!/usr/bin/env python3
"""Run the three-turn demo conversation through the full pipeline and print
the transcript.

    python3 scripts/run_demo.py          # deterministic fallbacks only
    python3 scripts/run_demo.py --stub   # with the stub model backends
"""

from __future__ import annotations

import argparse
import sys
from contextlib import ExitStack
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from convsearch.context import ConversationSession
from convsearch.index import build_index
from convsearch.pipeline import BackendConfig, PipelineConfig, process_turn
from convsearch.stub_backend import StubServer
from _seed import SEED_PASSAGES, SEED_SCRIPT


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--stub", action="store_true",
                        help="serve the deterministic stub backends locally")
    args = parser.parse_args()

    index = build_index(SEED_PASSAGES)
    with ExitStack() as stack:
        backends = BackendConfig()
        if args.stub:
            server = stack.enter_context(StubServer())
            backends = BackendConfig(
                rewriter_url=server.base_url,
                reranker_url=server.base_url,
                summarizer_url=server.base_url,
            )
        config = PipelineConfig(first_stage_k=10, rerank_depth=10, backends=backends)
        session = ConversationSession("demo")

        for query in SEED_SCRIPT:
            result = process_turn(session, query, config, index)
            print(f"turn {result.turn_number}")
            print(f"  raw:       {result.raw_query}")
            print(f"  rewritten: {result.rewritten_query}")
            for p in result.ranked[:3]:
                print(f"  #{p.rank} {p.passage_id}  score={p.score:.4f}")
            print(f"  answer ({result.answer.mode}): {result.answer.text}")
            if result.degraded_flags:
                print(f"  degraded: {', '.join(result.degraded_flags)}")
            timing = ", ".join(f"{k}={v:.1f}ms" for k, v in result.timings_ms.items())
            print(f"  timings: {timing}")
            print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
