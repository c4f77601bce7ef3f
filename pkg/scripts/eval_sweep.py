#!/usr/bin/env python3
"""Desk-scale evaluation sweep on the seeded demo corpus.

Prints the retrieval report for raw vs rewritten queries, then the
answer-quality sweep over minimum answer lengths.

    python3 scripts/eval_sweep.py
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from convsearch.evalharness import eval_answers, eval_retrieval
from convsearch.index import build_index
from convsearch.metrics import JudgmentSet
from convsearch.pipeline import PipelineConfig
from _seed import SEED_PASSAGES, SEED_QRELS, SEED_SCRIPT


def main() -> int:
    index = build_index(SEED_PASSAGES)
    config = PipelineConfig(first_stage_k=10, rerank_depth=10)

    qrels = JudgmentSet()
    for turn_id, grades in SEED_QRELS.items():
        for pid, grade in grades.items():
            qrels.add(turn_id, pid, grade)

    with tempfile.TemporaryDirectory() as tmp:
        topics = Path(tmp) / "topics.jsonl"
        topics.write_text(json.dumps({
            "topic_id": "demo",
            "turns": [{"turn_id": f"demo_{i}", "raw": q}
                      for i, q in enumerate(SEED_SCRIPT, 1)],
        }) + "\n")

        for mode in ("raw", "rewritten"):
            report, _ = eval_retrieval(index, config, topics, qrels, mode=mode)
            print(f"== retrieval ({mode} queries) ==")
            print(report.to_tsv(), end="")
            print()

        print("== answer sweep (extractive baseline) ==")
        rows = eval_answers(index, config, topics, qrels, [20, 40, 60, 80, 100, 120])
        print("generator\tmin_length\trouge_l\tmeteor_lite\tturns")
        for row in rows:
            print(f"{row['generator']}\t{row['min_length']}\t"
                  f"{row['rouge_l']:.4f}\t{row['meteor_lite']:.4f}\t{row['turns']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
