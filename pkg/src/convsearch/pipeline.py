"""Per-turn orchestration of the four pipeline stages:
rewrite -> retrieve -> re-rank -> generate.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field, replace

from . import context as ctx
from .gateway import BackendEndpoint, GatewayRewriter, GatewayScorer, GatewaySummarizer
from .generate import GeneratedAnswer, GenerationParams, generate_answer
from .index import Index
from .rerank import rerank
from .retrieval import EmptyQueryAfterAnalysis, RetrievalModel, ScoredList, search

NO_RESULT_ANSWER = "I could not find an answer to that."


@dataclass(frozen=True)
class BackendConfig:
    rewriter_url: str | None = None
    reranker_url: str | None = None
    summarizer_url: str | None = None
    timeout_ms: int = 10000
    max_retries: int = 2
    bearer_token: str | None = None

    @staticmethod
    def from_env(base: "BackendConfig | None" = None) -> "BackendConfig":
        base = base or BackendConfig()
        return replace(
            base,
            rewriter_url=os.environ.get("REWRITER_URL", base.rewriter_url),
            reranker_url=os.environ.get("RERANKER_URL", base.reranker_url),
            summarizer_url=os.environ.get("SUMMARIZER_URL", base.summarizer_url),
            timeout_ms=int(os.environ.get("BACKEND_TIMEOUT_MS", base.timeout_ms)),
        )


@dataclass(frozen=True)
class PipelineConfig:
    retrieval: RetrievalModel = field(default_factory=RetrievalModel)
    first_stage_k: int = 50
    rerank_depth: int = 50
    generation: GenerationParams = field(default_factory=GenerationParams)
    backends: BackendConfig = field(default_factory=BackendConfig)
    fallback_rewrite: bool = True
    fallback_rerank: bool = True
    fallback_summary: bool = True
    run_tag: str = "convsearch"

    def __post_init__(self):
        if self.rerank_depth > self.first_stage_k:
            raise ValueError("rerank_depth must be <= first_stage_k")

    def rewriter(self) -> GatewayRewriter | None:
        if not self.backends.rewriter_url:
            return None
        return GatewayRewriter(self._endpoint(self.backends.rewriter_url, "rewrite"))

    def scorer(self) -> GatewayScorer | None:
        if not self.backends.reranker_url:
            return None
        return GatewayScorer(self._endpoint(self.backends.reranker_url, "rerank"))

    def summarizer(self) -> GatewaySummarizer | None:
        if not self.backends.summarizer_url:
            return None
        return GatewaySummarizer(self._endpoint(self.backends.summarizer_url, "summarize"))

    def _endpoint(self, url: str, capability: str) -> BackendEndpoint:
        return BackendEndpoint(
            base_url=url,
            timeout_ms=self.backends.timeout_ms,
            max_retries=self.backends.max_retries,
            capability=capability,
            bearer_token=self.backends.bearer_token,
        )


@dataclass
class RankedPassage:
    passage_id: str
    score: float
    rank: int
    text: str | None = None


@dataclass
class TurnResult:
    turn_number: int
    raw_query: str
    rewritten_query: str
    degraded_flags: list[str]
    ranked: list[RankedPassage]
    answer: GeneratedAnswer
    timings_ms: dict[str, float]


def _no_result(turn_number: int, raw_query: str, rewritten: str, timings: dict[str, float]) -> TurnResult:
    return TurnResult(
        turn_number=turn_number,
        raw_query=raw_query,
        rewritten_query=rewritten,
        degraded_flags=[],
        ranked=[],
        answer=GeneratedAnswer(NO_RESULT_ANSWER, "extractive_baseline", []),
        timings_ms=timings,
    )


def process_turn(
    session: ctx.ConversationSession,
    raw_query: str,
    config: PipelineConfig,
    index: Index,
    text_depth: int = 10,
) -> TurnResult:
    """Run all four stages for one turn and append it to the session.

    A fallback firing at any stage is recorded in degraded_flags. Queries
    that analyze to nothing yield the fixed no-result answer.
    """
    turn_number = len(session.turns) + 1
    flags: list[str] = []
    timings: dict[str, float] = {}

    start = time.perf_counter()
    backend = config.rewriter()
    result = ctx.rewrite(session, raw_query, backend, fallback=config.fallback_rewrite)
    if backend is None or result.degraded:
        flags.append("rewrite_fallback")
    rewritten = result.text
    timings["rewrite"] = (time.perf_counter() - start) * 1000

    start = time.perf_counter()
    try:
        first_stage = search(index, rewritten, config.retrieval, config.first_stage_k, turn_id=f"{session.session_id}_{turn_number}")
    except EmptyQueryAfterAnalysis:
        timings["retrieval"] = (time.perf_counter() - start) * 1000
        turn_result = _no_result(turn_number, raw_query, rewritten, timings)
        session.append_turn(
            ctx.ConversationTurn(turn_number, raw_query, rewritten, answer=turn_result.answer.text)
        )
        return turn_result
    timings["retrieval"] = (time.perf_counter() - start) * 1000

    start = time.perf_counter()
    scorer = config.scorer()
    rerank_result = rerank(
        rewritten, first_stage, scorer, config.rerank_depth, index,
        fallback=config.fallback_rerank,
    )
    if scorer is None or rerank_result.degraded:
        flags.append("rerank_fallback")
    ranked = rerank_result.ranked
    timings["rerank"] = (time.perf_counter() - start) * 1000

    start = time.perf_counter()
    summarizer = config.summarizer()
    answer, degraded = generate_answer(
        ranked, index, config.generation, summarizer, fallback=config.fallback_summary
    )
    if summarizer is None or degraded:
        flags.append("summary_fallback")
    timings["generate"] = (time.perf_counter() - start) * 1000

    top = ranked.entries[0]
    session.append_turn(
        ctx.ConversationTurn(
            turn_number,
            raw_query,
            rewritten,
            top_passage_text=index.passage_by_id(top.passage_id).text,
            top_passage_id=top.passage_id,
            answer=answer.text,
        )
    )

    view = [
        RankedPassage(
            e.passage_id, e.score, e.rank,
            index.passage_by_id(e.passage_id).text if e.rank <= max(text_depth, 3) else None,
        )
        for e in ranked.entries
    ]
    return TurnResult(
        turn_number=turn_number,
        raw_query=raw_query,
        rewritten_query=rewritten,
        degraded_flags=flags,
        ranked=view,
        answer=answer,
        timings_ms=timings,
    )
