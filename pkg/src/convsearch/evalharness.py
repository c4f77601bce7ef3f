"""Batch evaluation: retrieval over topic files and qrels, rewrite quality
via corpus BLEU-4, and answer quality (ROUGE-L / METEOR-lite) swept over
minimum answer lengths.

Topics files are line-delimited JSON records:
    {"topic_id": "31", "turns": [{"turn_id": "31_1", "raw": "...", "manual": "..."}]}
Histories in these files are query-only (no passages enter the rewrite
prompts), matching how conversational IR evaluation sets are distributed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from . import context as ctx
from .generate import extractive_baseline, generate_answer
from .index import Index
from .metrics import (
    EmptyCorpus,
    JudgmentSet,
    MetricReport,
    RewritePair,
    RunEntry,
    bleu4,
    evaluate_run,
    meteor_lite,
    rouge_l,
    write_run,
)
from .pipeline import PipelineConfig
from .rerank import rerank
from .retrieval import EmptyQueryAfterAnalysis, search


class MissingManualRewrite(Exception):
    pass


@dataclass
class Topic:
    topic_id: str
    turns: list[dict]


def load_topics(path: str | Path) -> list[Topic]:
    topics = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            record = json.loads(line)
            topics.append(Topic(str(record["topic_id"]), record["turns"]))
    return topics


def _resolve_query(
    session: ctx.ConversationSession, turn: dict, mode: str, config: PipelineConfig
) -> str:
    raw = turn["raw"]
    if mode == "raw":
        return raw
    if mode == "manual":
        manual = turn.get("manual")
        if not manual:
            raise MissingManualRewrite(turn.get("turn_id", "?"))
        return manual
    if mode == "rewritten":
        return ctx.rewrite(session, raw, config.rewriter(), fallback=config.fallback_rewrite).text
    raise ValueError(f"unknown mode: {mode}")


def eval_retrieval(
    index: Index,
    config: PipelineConfig,
    topics_path: str | Path,
    qrels: JudgmentSet,
    mode: str = "rewritten",
    use_rerank: bool = False,
    run_path: str | Path | None = None,
) -> tuple[MetricReport, list[RunEntry]]:
    """Run the retrieval pipeline per turn in the chosen query mode and
    score the resulting run against the qrels."""
    runs: dict[str, list[str]] = {}
    entries: list[RunEntry] = []
    for topic in load_topics(topics_path):
        session = ctx.ConversationSession(session_id=topic.topic_id)
        for turn in topic.turns:
            turn_id = str(turn["turn_id"])
            query = _resolve_query(session, turn, mode, config)
            session.append_turn(ctx.ConversationTurn(len(session.turns) + 1, turn["raw"], query))
            try:
                scored = search(index, query, config.retrieval, config.first_stage_k, turn_id)
            except EmptyQueryAfterAnalysis:
                runs[turn_id] = []
                continue
            if use_rerank:
                scored = rerank(
                    query, scored, config.scorer(), config.rerank_depth, index,
                    fallback=config.fallback_rerank,
                ).ranked
            runs[turn_id] = scored.ids()
            entries.extend(
                RunEntry(turn_id, e.passage_id, e.rank, e.score, config.run_tag)
                for e in scored.entries
            )
    if run_path is not None:
        write_run(run_path, entries)
    report = evaluate_run(runs, qrels, depth=config.first_stage_k)
    return report, entries


def eval_rewrites(config: PipelineConfig, records_path: str | Path) -> float:
    """Corpus BLEU-4 (scaled to 0-100) of the configured rewriter against
    human targets. Records: {"history": [...], "query": ..., "target": ...},
    history items either plain queries or {"query", "passage"} objects."""
    pairs: list[RewritePair] = []
    with open(records_path, encoding="utf-8") as f:
        lines = [line for line in f if line.strip()]
    for i, line in enumerate(lines):
        record = json.loads(line)
        session = ctx.ConversationSession(session_id=f"r{i}")
        for j, item in enumerate(record.get("history", []), start=1):
            if isinstance(item, dict):
                turn = ctx.ConversationTurn(
                    j, item["query"], item["query"], top_passage_text=item.get("passage")
                )
            else:
                turn = ctx.ConversationTurn(j, item, item)
            session.append_turn(turn)
        hypothesis = ctx.rewrite(
            session, record["query"], config.rewriter(), fallback=config.fallback_rewrite
        ).text
        pairs.append(RewritePair(str(i), hypothesis, [record["target"]]))
    if not pairs:
        raise EmptyCorpus(str(records_path))
    return bleu4(pairs) * 100.0


def eval_answers(
    index: Index,
    config: PipelineConfig,
    topics_path: str | Path,
    qrels: JudgmentSet,
    min_length_sweep: list[int],
    mode: str = "rewritten",
    use_rerank: bool = True,
) -> list[dict]:
    """Answer-quality sweep. References per turn are the texts of passages
    judged 3 or 4; turns without references (or without passages present in
    the index) are skipped. Returns rows of
    {generator, min_length, rouge_l, meteor_lite, turns}."""
    per_turn_ranked = []
    for topic in load_topics(topics_path):
        session = ctx.ConversationSession(session_id=topic.topic_id)
        for turn in topic.turns:
            turn_id = str(turn["turn_id"])
            query = _resolve_query(session, turn, mode, config)
            session.append_turn(ctx.ConversationTurn(len(session.turns) + 1, turn["raw"], query))
            references = [
                index.passage_by_id(pid).text
                for pid in sorted(qrels.relevant_ids(turn_id, threshold=3))
                if pid in index.id_to_ordinal
            ]
            if not references:
                continue
            try:
                scored = search(index, query, config.retrieval, config.first_stage_k, turn_id)
            except EmptyQueryAfterAnalysis:
                continue
            if use_rerank:
                scored = rerank(
                    query, scored, config.scorer(), config.rerank_depth, index,
                    fallback=config.fallback_rerank,
                ).ranked
            per_turn_ranked.append((scored, references))

    summarizer = config.summarizer()
    modes = ["extractive_baseline"] + (["abstractive"] if summarizer else [])
    rows = []
    for generator in modes:
        for min_length in min_length_sweep:
            rouge_scores = []
            meteor_scores = []
            for scored, references in per_turn_ranked:
                if generator == "extractive_baseline":
                    answer = extractive_baseline(scored, index, min_length)
                else:
                    params_i = replace(config.generation, min_length_words=min_length)
                    answer, _ = generate_answer(scored, index, params_i, summarizer,
                                                fallback=config.fallback_summary)
                rouge_scores.append(rouge_l(answer.text, references))
                meteor_scores.append(meteor_lite(answer.text, references))
            n = len(rouge_scores)
            rows.append(
                {
                    "generator": generator,
                    "min_length": min_length,
                    "rouge_l": sum(rouge_scores) / n if n else 0.0,
                    "meteor_lite": sum(meteor_scores) / n if n else 0.0,
                    "turns": n,
                }
            )
    return rows
