"""Re-order first-stage candidates by relevance probability.

Input pairs are rendered as "[CLS] q [SEP] p"; the probability comes from a
served cross-encoder through the gateway or from a deterministic term-overlap
fallback. Re-ranking permutes, never removes: candidates beyond the re-rank
depth keep their first-stage order below the re-ranked block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from .context import estimate_tokens
from .index import Index
from .retrieval import ScoredEntry, ScoredList
from .text import AnalyzerConfig, analyze

RERANK_TOKEN_BUDGET = 512
DEFAULT_BATCH_SIZE = 16


class QueryTooLong(Exception):
    pass


class ScorerUnavailable(Exception):
    pass


@dataclass(frozen=True)
class RerankInput:
    query: str
    passage_text: str
    rendered: str


@dataclass(frozen=True)
class RelevanceScore:
    passage_id: str
    probability: float


def build_rerank_input(query: str, passage_text: str, budget: int = RERANK_TOKEN_BUDGET) -> RerankInput:
    """Render "[CLS] q [SEP] p", truncating the passage tail to the budget."""
    if not query:
        raise ValueError("query must be non-empty")
    frame = f"[CLS] {query} [SEP] "
    if estimate_tokens(frame) > budget:
        raise QueryTooLong(query)
    rendered = frame + passage_text
    if estimate_tokens(rendered) > budget:
        words = passage_text.split()
        while words and estimate_tokens(frame + " ".join(words)) > budget:
            words.pop()
        rendered = frame + " ".join(words)
    return RerankInput(query=query, passage_text=passage_text, rendered=rendered)


class ScorerBackend(Protocol):
    def score(self, pairs: list[tuple[str, str]]) -> list[float]:
        """Probabilities in [0,1], positionally aligned with the input pairs."""
        ...


@dataclass
class OverlapScorer:
    """Deterministic fallback: analyzed-term overlap fraction of the query."""

    analyzer: AnalyzerConfig = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.analyzer is None:
            self.analyzer = AnalyzerConfig()

    def score_pair(self, query: str, passage_text: str) -> float:
        query_terms = set(analyze(query, self.analyzer))
        if not query_terms:
            return 0.0
        passage_terms = set(analyze(passage_text, self.analyzer))
        overlap = len(query_terms & passage_terms) / len(query_terms)
        return min(1.0, max(0.0, overlap))

    def score(self, pairs: list[tuple[str, str]]) -> list[float]:
        return [self.score_pair(q, p) for q, p in pairs]


@dataclass(frozen=True)
class RerankResult:
    ranked: ScoredList
    degraded: bool


def rerank(
    query: str,
    candidates: ScoredList,
    scorer: ScorerBackend | None,
    depth: int,
    index: Index,
    fallback: bool = True,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> RerankResult:
    """Score the top `depth` candidates and sort them by probability
    descending (ties by passage_id ascending); the tail is untouched."""
    depth = min(depth, len(candidates.entries))
    if depth <= 0:
        return RerankResult(candidates, degraded=False)

    head = candidates.entries[:depth]
    tail = candidates.entries[depth:]
    pairs = [(query, index.passage_by_id(e.passage_id).text) for e in head]

    degraded = False
    if scorer is None:
        if not fallback:
            raise ScorerUnavailable("no scorer and fallback disabled")
        scorer = OverlapScorer(index.analyzer)
    probs: list[float] = []
    try:
        for start in range(0, len(pairs), batch_size):
            probs.extend(scorer.score(pairs[start : start + batch_size]))
    except Exception:
        if not fallback:
            raise
        probs = OverlapScorer(index.analyzer).score(pairs)
        degraded = True

    scored = sorted(
        zip(head, probs), key=lambda ep: (-ep[1], ep[0].passage_id)
    )
    entries = [
        ScoredEntry(e.passage_id, prob, rank)
        for rank, (e, prob) in enumerate(scored, start=1)
    ]
    entries += [
        ScoredEntry(e.passage_id, e.score, rank)
        for rank, e in enumerate(tail, start=depth + 1)
    ]
    return RerankResult(ScoredList(candidates.turn_id, entries), degraded=degraded)
