"""Inverted index and passage store over a passage collection.

Build is single-writer and deterministic; a built or loaded index is
immutable. Persistence is a binary envelope (magic, version byte, sha256
checksum) around a canonical JSON payload, so identical input streams
produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .text import AnalyzerConfig, analyze

MAGIC = b"CSIX"
FORMAT_VERSION = 1


class IndexError_(Exception):
    pass


class DuplicateId(IndexError_):
    pass


class EmptyCollection(IndexError_):
    pass


class FormatVersionMismatch(IndexError_):
    pass


class CorruptIndex(IndexError_):
    pass


class ParseError(Exception):
    def __init__(self, line_number: int, excerpt: str):
        super().__init__(f"line {line_number}: {excerpt[:80]!r}")
        self.line_number = line_number
        self.excerpt = excerpt


@dataclass(frozen=True)
class Passage:
    id: str
    text: str
    source: str = "local"  # marco | car | wapo | local


@dataclass
class Index:
    """Immutable after build. Postings entries are (doc_ordinal, tf)."""

    passages: list[Passage]
    id_to_ordinal: dict[str, int]
    postings_map: dict[str, list[tuple[int, int]]]
    doc_length: list[int]
    total_tokens: int
    analyzer: AnalyzerConfig = field(default_factory=AnalyzerConfig)

    @property
    def doc_count(self) -> int:
        return len(self.passages)

    @property
    def avg_doc_length(self) -> float:
        return self.total_tokens / self.doc_count

    def collection_frequency(self, term: str) -> int:
        return sum(tf for _, tf in self.postings_map.get(term, ()))

    def document_frequency(self, term: str) -> int:
        return len(self.postings_map.get(term, ()))

    def postings(self, term: str) -> list[tuple[int, int]] | None:
        return self.postings_map.get(term)

    def passage_by_id(self, passage_id: str) -> Passage:
        return self.passages[self.id_to_ordinal[passage_id]]


def build_index(passages: Iterable[Passage], config: AnalyzerConfig | None = None) -> Index:
    """Single pass over the stream; analysis is the shared text pipeline."""
    config = config or AnalyzerConfig()
    stored: list[Passage] = []
    id_to_ordinal: dict[str, int] = {}
    postings: dict[str, list[tuple[int, int]]] = {}
    doc_length: list[int] = []
    total = 0

    for passage in passages:
        if passage.id in id_to_ordinal:
            raise DuplicateId(passage.id)
        ordinal = len(stored)
        id_to_ordinal[passage.id] = ordinal
        stored.append(passage)

        terms = analyze(passage.text, config)
        doc_length.append(len(terms))
        total += len(terms)
        counts: dict[str, int] = {}
        for term in terms:
            counts[term] = counts.get(term, 0) + 1
        for term, tf in counts.items():
            postings.setdefault(term, []).append((ordinal, tf))

    if not stored:
        raise EmptyCollection("no passages in stream")

    return Index(
        passages=stored,
        id_to_ordinal=id_to_ordinal,
        postings_map=postings,
        doc_length=doc_length,
        total_tokens=total,
        analyzer=config,
    )


def save(index: Index, path: str | Path) -> None:
    payload = {
        "passages": [[p.id, p.text, p.source] for p in index.passages],
        "postings": {t: index.postings_map[t] for t in sorted(index.postings_map)},
        "doc_length": index.doc_length,
        "total_tokens": index.total_tokens,
        "analyzer": {
            "lowercase": index.analyzer.lowercase,
            "stopwords": sorted(index.analyzer.stopword_list),
            "stemmer": index.analyzer.stemmer,
        },
    }
    blob = zlib.compress(json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8"), 6)
    digest = hashlib.sha256(blob).digest()
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(bytes([FORMAT_VERSION]))
        f.write(digest)
        f.write(blob)


def load(path: str | Path) -> Index:
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < len(MAGIC) + 1 + 32 or data[: len(MAGIC)] != MAGIC:
        raise CorruptIndex("bad magic or truncated header")
    version = data[len(MAGIC)]
    if version != FORMAT_VERSION:
        raise FormatVersionMismatch(f"version {version}, expected {FORMAT_VERSION}")
    digest = data[len(MAGIC) + 1 : len(MAGIC) + 33]
    blob = data[len(MAGIC) + 33 :]
    if hashlib.sha256(blob).digest() != digest:
        raise CorruptIndex("checksum mismatch")
    try:
        payload = json.loads(zlib.decompress(blob))
    except (zlib.error, json.JSONDecodeError) as e:
        raise CorruptIndex(str(e)) from e

    passages = [Passage(pid, text, source) for pid, text, source in payload["passages"]]
    analyzer = AnalyzerConfig(
        lowercase=payload["analyzer"]["lowercase"],
        stopword_list=frozenset(payload["analyzer"]["stopwords"]),
        stemmer=payload["analyzer"]["stemmer"],
    )
    return Index(
        passages=passages,
        id_to_ordinal={p.id: i for i, p in enumerate(passages)},
        postings_map={t: [tuple(e) for e in entries] for t, entries in payload["postings"].items()},
        doc_length=payload["doc_length"],
        total_tokens=payload["total_tokens"],
        analyzer=analyzer,
    )


def ingest_collection(path: str | Path, format: str = "tsv_id_text") -> Iterator[Passage]:
    """Yield passages from a tsv (id<TAB>text) or jsonl ({"id","text"}) file."""
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if format == "tsv_id_text":
                if "\t" not in line:
                    raise ParseError(lineno, line)
                pid, text = line.split("\t", 1)
                if not pid or not text:
                    raise ParseError(lineno, line)
                yield Passage(pid, text)
            elif format == "jsonl":
                try:
                    record = json.loads(line)
                    yield Passage(str(record["id"]), str(record["text"]))
                except (json.JSONDecodeError, KeyError, TypeError):
                    raise ParseError(lineno, line) from None
            else:
                raise ValueError(f"unknown format: {format}")
