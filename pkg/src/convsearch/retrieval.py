"""First-stage lexical ranking: BM25 and query-likelihood language models
with Dirichlet (lmd, the pipeline default) and Jelinek-Mercer (lmjm)
smoothing. Pure functions over an immutable index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .index import Index
from .text import analyze


class EmptyQueryAfterAnalysis(Exception):
    """All query terms were stopwords or unseen in the collection."""


@dataclass(frozen=True)
class RetrievalModel:
    kind: str = "lmd"  # bm25 | lmd | lmjm
    k1: float = 0.9
    b: float = 0.4
    mu: float = 1000.0
    lambda_: float = 0.1

    def __post_init__(self):
        if self.kind not in ("bm25", "lmd", "lmjm"):
            raise ValueError(f"unknown model kind: {self.kind}")
        if self.k1 < 0 or not 0 <= self.b <= 1 or self.mu <= 0 or not 0 < self.lambda_ < 1:
            raise ValueError("model parameter out of range")


@dataclass(frozen=True)
class ScoredEntry:
    passage_id: str
    score: float
    rank: int


@dataclass
class ScoredList:
    turn_id: str
    entries: list[ScoredEntry]

    def ids(self) -> list[str]:
        return [e.passage_id for e in self.entries]


def _tf(index: Index, term: str, doc_ordinal: int) -> int:
    postings = index.postings(term)
    if postings is None:
        return 0
    for ordinal, tf in postings:
        if ordinal == doc_ordinal:
            return tf
    return 0


def score_bm25(query_terms: list[str], doc_ordinal: int, index: Index, model: RetrievalModel) -> float:
    """Okapi BM25 with idf = ln(1 + (N - df + 0.5)/(df + 0.5))."""
    n = index.doc_count
    dl = index.doc_length[doc_ordinal]
    avgdl = index.avg_doc_length
    score = 0.0
    for term in set(query_terms):
        tf = _tf(index, term, doc_ordinal)
        if tf == 0:
            continue
        df = index.document_frequency(term)
        idf = math.log(1.0 + (n - df + 0.5) / (df + 0.5))
        score += idf * tf * (model.k1 + 1.0) / (tf + model.k1 * (1.0 - model.b + model.b * dl / avgdl))
    return score


def score_lm(query_terms: list[str], doc_ordinal: int, index: Index, model: RetrievalModel) -> float:
    """Query log-likelihood; query terms unseen in the collection are skipped."""
    dl = index.doc_length[doc_ordinal]
    collection_size = index.total_tokens
    counts: dict[str, int] = {}
    for term in query_terms:
        counts[term] = counts.get(term, 0) + 1

    score = 0.0
    for term, qtf in counts.items():
        cf = index.collection_frequency(term)
        if cf == 0:
            continue
        background = cf / collection_size
        tf = _tf(index, term, doc_ordinal)
        if model.kind == "lmd":
            p = (tf + model.mu * background) / (dl + model.mu)
        else:  # lmjm
            within = tf / dl if dl > 0 else 0.0
            p = (1.0 - model.lambda_) * within + model.lambda_ * background
        score += qtf * math.log(p)
    return score


def search(index: Index, query: str, model: RetrievalModel, k: int, turn_id: str = "q") -> ScoredList:
    """Top-k over all docs; deterministic tie-break by passage_id ascending.

    BM25 only scores docs overlapping the query; LM models score every doc.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    terms = analyze(query, index.analyzer)
    seen = [t for t in terms if index.collection_frequency(t) > 0]
    if not seen:
        raise EmptyQueryAfterAnalysis(query)

    if model.kind == "bm25":
        candidates = sorted({ordinal for t in set(seen) for ordinal, _ in index.postings(t) or []})
        scored = [(score_bm25(seen, d, index, model), d) for d in candidates]
        scored = [(s, d) for s, d in scored if s > 0]
    else:
        scored = [(score_lm(seen, d, index, model), d) for d in range(index.doc_count)]

    scored.sort(key=lambda sd: (-sd[0], index.passages[sd[1]].id))
    entries = [
        ScoredEntry(index.passages[d].id, s, rank)
        for rank, (s, d) in enumerate(scored[:k], start=1)
    ]
    return ScoredList(turn_id=turn_id, entries=entries)
