"""Answer generation for a turn: concatenate the top-N re-ranked passages,
hand them to an abstractive summarizer backend, or fall back to the
extractive crop baseline (whole sentences until the minimum word length).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .index import Index
from .retrieval import ScoredList
from .text import split_sentences


class SummarizerUnavailable(Exception):
    pass


@dataclass(frozen=True)
class GenerationParams:
    num_beams: int = 4
    no_repeat_ngram: int = 3
    early_stop_sentences: int = 4
    min_length_words: int = 20
    max_length_words: int | None = None  # None: word length of the input
    top_n_passages: int = 3

    def __post_init__(self):
        if self.top_n_passages < 1:
            raise ValueError("top_n_passages must be >= 1")
        if self.max_length_words is not None and self.min_length_words > self.max_length_words:
            raise ValueError("min_length_words > max_length_words")


@dataclass(frozen=True)
class GeneratedAnswer:
    text: str
    mode: str  # abstractive | extractive_baseline
    source_passage_ids: list[str] = field(default_factory=list)
    contract_violation: bool = False


def build_summarizer_input(ranked: ScoredList, index: Index, n: int) -> str:
    """Top-N passage texts concatenated in rank order, single-space separated."""
    if not ranked.entries:
        raise ValueError("ranked list is empty")
    top = ranked.entries[: min(n, len(ranked.entries))]
    return " ".join(index.passage_by_id(e.passage_id).text for e in top)


class SummarizerBackend(Protocol):
    def summarize(self, text: str, params: GenerationParams) -> str: ...


def _truncate_at_sentence(text: str, max_words: int) -> str:
    out: list[str] = []
    count = 0
    for sentence in split_sentences(text):
        words = len(sentence.split())
        if out and count + words > max_words:
            break
        out.append(sentence)
        count += words
        if count >= max_words:
            break
    return " ".join(out)


def generate_answer(
    ranked: ScoredList,
    index: Index,
    params: GenerationParams,
    backend: SummarizerBackend | None,
    fallback: bool = True,
) -> tuple[GeneratedAnswer, bool]:
    """Returns (answer, degraded). Backend failures fall back to the
    extractive baseline when allowed."""
    source = build_summarizer_input(ranked, index, params.top_n_passages)
    max_words = params.max_length_words or len(source.split())
    ids = [e.passage_id for e in ranked.entries[: params.top_n_passages]]

    if backend is not None:
        try:
            text = backend.summarize(source, params)
        except Exception:
            if not fallback:
                raise
            answer = extractive_baseline(ranked, index, params.min_length_words)
            return answer, True
        if not text.strip():
            if not fallback:
                raise SummarizerUnavailable("backend returned empty summary")
            return extractive_baseline(ranked, index, params.min_length_words), True
        violated = len(text.split()) > max_words
        if violated:
            text = _truncate_at_sentence(text, max_words)
        return GeneratedAnswer(text, "abstractive", ids, contract_violation=violated), False

    if not fallback:
        raise SummarizerUnavailable("no backend and fallback disabled")
    return extractive_baseline(ranked, index, params.min_length_words), False


def extractive_baseline(ranked: ScoredList, index: Index, min_length_words: int) -> GeneratedAnswer:
    """Crop of the concatenated top-3 passages: whole sentences, in order,
    until the word count first reaches the minimum length."""
    if not ranked.entries:
        raise ValueError("ranked list is empty")
    top = ranked.entries[:3]
    concatenated = " ".join(index.passage_by_id(e.passage_id).text for e in top)
    sentences = split_sentences(concatenated)
    out: list[str] = []
    count = 0
    for sentence in sentences:
        if count >= min_length_words:
            break
        out.append(sentence)
        count += len(sentence.split())
    return GeneratedAnswer(
        " ".join(out), "extractive_baseline", [e.passage_id for e in top]
    )
