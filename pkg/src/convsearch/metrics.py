"""Evaluation metrics and TREC-style file formats.

Ranking metrics (Recall, P@k, MAP, MRR, nDCG@k) over graded qrels and run
files; corpus BLEU-4 for rewrites; ROUGE-L and METEOR-lite for answers.
METEOR-lite is exact + stemmed matching only (no synonym resources), with
the original parameterization otherwise. Multi-reference aggregation for
ROUGE-L and METEOR-lite is max over references.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .text import stem, tokenize

REL_THRESHOLD = 2  # binary relevance cut for Recall/P@k/MAP/MRR


class ParseError(Exception):
    def __init__(self, line_number: int, excerpt: str):
        super().__init__(f"line {line_number}: {excerpt[:80]!r}")
        self.line_number = line_number
        self.excerpt = excerpt


class EmptyCorpus(Exception):
    pass


@dataclass
class JudgmentSet:
    """Graded judgments per (turn_id, passage_id); absent means grade 0."""

    grades: dict[str, dict[str, int]] = field(default_factory=dict)

    def grade(self, turn_id: str, passage_id: str) -> int:
        return self.grades.get(turn_id, {}).get(passage_id, 0)

    def add(self, turn_id: str, passage_id: str, grade: int) -> None:
        if not 0 <= grade <= 4:
            raise ValueError(f"grade {grade} outside [0,4]")
        self.grades.setdefault(turn_id, {})[passage_id] = grade

    def relevant_ids(self, turn_id: str, threshold: int = REL_THRESHOLD) -> set[str]:
        return {p for p, g in self.grades.get(turn_id, {}).items() if g >= threshold}


@dataclass
class RewritePair:
    turn_id: str
    hypothesis: str
    references: list[str]

    def __post_init__(self):
        if not self.references:
            raise ValueError("references must be non-empty")


# --- ranking metrics ----------------------------------------------------------


def _run_grades(run_ids: list[str], judgments: JudgmentSet, turn_id: str) -> list[int]:
    return [judgments.grade(turn_id, pid) for pid in run_ids]


def precision_at_k(
    run_ids: list[str], judgments: JudgmentSet, turn_id: str,
    k: int = 3, rel_threshold: int = REL_THRESHOLD,
) -> float:
    grades = _run_grades(run_ids[:k], judgments, turn_id)
    return sum(1 for g in grades if g >= rel_threshold) / k


def recall(
    run_ids: list[str], judgments: JudgmentSet, turn_id: str,
    rel_threshold: int = REL_THRESHOLD, depth: int = 1000,
) -> float:
    relevant = judgments.relevant_ids(turn_id, rel_threshold)
    if not relevant:
        return 0.0
    retrieved = set(run_ids[:depth])
    return len(relevant & retrieved) / len(relevant)


def average_precision(
    run_ids: list[str], judgments: JudgmentSet, turn_id: str,
    rel_threshold: int = REL_THRESHOLD,
) -> float:
    relevant = judgments.relevant_ids(turn_id, rel_threshold)
    if not relevant:
        return 0.0
    hits = 0
    total = 0.0
    for rank, pid in enumerate(run_ids, start=1):
        if pid in relevant:
            hits += 1
            total += hits / rank
    return total / len(relevant)


def reciprocal_rank(
    run_ids: list[str], judgments: JudgmentSet, turn_id: str,
    rel_threshold: int = REL_THRESHOLD,
) -> float:
    for rank, pid in enumerate(run_ids, start=1):
        if judgments.grade(turn_id, pid) >= rel_threshold:
            return 1.0 / rank
    return 0.0


def ndcg_at_k(
    run_ids: list[str], judgments: JudgmentSet, turn_id: str,
    k: int = 3, gain: str = "exponential",
) -> float:
    def g(rel: int) -> float:
        return (2.0**rel - 1.0) if gain == "exponential" else float(rel)

    dcg = sum(
        g(judgments.grade(turn_id, pid)) / math.log2(rank + 1)
        for rank, pid in enumerate(run_ids[:k], start=1)
    )
    ideal = sorted(judgments.grades.get(turn_id, {}).values(), reverse=True)[:k]
    idcg = sum(g(rel) / math.log2(rank + 1) for rank, rel in enumerate(ideal, start=1))
    return dcg / idcg if idcg > 0 else 0.0


# --- text metrics -------------------------------------------------------------


def _surfaces(text: str) -> list[str]:
    return [t.surface for t in tokenize(text)]


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu4(pairs: list[RewritePair]) -> float:
    """Corpus-level BLEU with uniform weights over n = 1..4, per-reference
    clipping, and the standard brevity penalty (closest reference length)."""
    if not pairs:
        raise EmptyCorpus("no rewrite pairs")
    matched = [0] * 4
    possible = [0] * 4
    hyp_len = 0
    ref_len = 0
    for pair in pairs:
        hyp = _surfaces(pair.hypothesis)
        refs = [_surfaces(r) for r in pair.references]
        hyp_len += len(hyp)
        ref_len += min((abs(len(r) - len(hyp)), len(r)) for r in refs)[1]
        for n in range(1, 5):
            hyp_counts = _ngrams(hyp, n)
            max_ref: Counter = Counter()
            for r in refs:
                for gram, count in _ngrams(r, n).items():
                    max_ref[gram] = max(max_ref[gram], count)
            possible[n - 1] += sum(hyp_counts.values())
            matched[n - 1] += sum(min(c, max_ref[g]) for g, c in hyp_counts.items())
    if any(p == 0 or m == 0 for m, p in zip(matched, possible)):
        return 0.0
    log_precision = sum(math.log(m / p) for m, p in zip(matched, possible)) / 4.0
    bp = 1.0 if hyp_len > ref_len else math.exp(1.0 - ref_len / max(hyp_len, 1))
    return bp * math.exp(log_precision)


def _lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(hypothesis: str, references: list[str]) -> float:
    """Token-level LCS F1, max over references."""
    hyp = _surfaces(hypothesis)
    if not hyp:
        return 0.0
    best = 0.0
    for reference in references:
        ref = _surfaces(reference)
        if not ref:
            continue
        lcs = _lcs_length(hyp, ref)
        p = lcs / len(hyp)
        r = lcs / len(ref)
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        best = max(best, f1)
    return best


def _greedy_alignment(hyp: list[str], ref: list[str]) -> list[tuple[int, int]]:
    """Two-pass greedy unigram alignment: exact surface, then Porter stems."""
    matches: list[tuple[int, int]] = []
    ref_used = [False] * len(ref)
    hyp_used = [False] * len(hyp)
    for i, h in enumerate(hyp):
        for j, r in enumerate(ref):
            if not ref_used[j] and h == r:
                matches.append((i, j))
                ref_used[j] = True
                hyp_used[i] = True
                break
    hyp_stems = [stem(h) for h in hyp]
    ref_stems = [stem(r) for r in ref]
    for i, hs in enumerate(hyp_stems):
        if hyp_used[i]:
            continue
        for j, rs in enumerate(ref_stems):
            if not ref_used[j] and hs == rs:
                matches.append((i, j))
                ref_used[j] = True
                hyp_used[i] = True
                break
    return sorted(matches)


def _chunk_count(matches: list[tuple[int, int]]) -> int:
    if not matches:
        return 0
    chunks = 1
    for (i1, j1), (i2, j2) in zip(matches, matches[1:]):
        if i2 != i1 + 1 or j2 != j1 + 1:
            chunks += 1
    return chunks


def meteor_lite(hypothesis: str, references: list[str]) -> float:
    """Unigram F-mean weighted toward recall, with a fragmentation penalty;
    max over references."""
    hyp = _surfaces(hypothesis)
    if not hyp:
        return 0.0
    best = 0.0
    for reference in references:
        ref = _surfaces(reference)
        if not ref:
            continue
        matches = _greedy_alignment(hyp, ref)
        m = len(matches)
        if m == 0:
            continue
        p = m / len(hyp)
        r = m / len(ref)
        fmean = 10 * p * r / (r + 9 * p)
        penalty = 0.5 * (_chunk_count(matches) / m) ** 3
        best = max(best, fmean * (1.0 - penalty))
    return best


# --- reports ------------------------------------------------------------------


@dataclass
class MetricReport:
    per_turn: dict[str, dict[str, float]] = field(default_factory=dict)

    @property
    def aggregate(self) -> dict[str, float]:
        sums: dict[str, list[float]] = {}
        for values in self.per_turn.values():
            for name, v in values.items():
                sums.setdefault(name, []).append(v)
        return {name: sum(vs) / len(vs) for name, vs in sorted(sums.items())}

    def metric_names(self) -> list[str]:
        names: list[str] = []
        for values in self.per_turn.values():
            for name in values:
                if name not in names:
                    names.append(name)
        return names

    def to_tsv(self) -> str:
        names = self.metric_names()
        lines = ["\t".join(["turn_id"] + names)]
        for turn_id in sorted(self.per_turn):
            row = [turn_id] + [f"{self.per_turn[turn_id][n]:.6f}" for n in names]
            lines.append("\t".join(row))
        agg = self.aggregate
        lines.append("\t".join(["all"] + [f"{agg[n]:.6f}" for n in names]))
        return "\n".join(lines) + "\n"

    def to_jsonl(self) -> str:
        lines = [
            json.dumps({"turn_id": t, **self.per_turn[t]}, sort_keys=True)
            for t in sorted(self.per_turn)
        ]
        lines.append(json.dumps({"turn_id": "all", **self.aggregate}, sort_keys=True))
        return "\n".join(lines) + "\n"


def evaluate_run(
    runs: dict[str, list[str]],
    judgments: JudgmentSet,
    rel_threshold: int = REL_THRESHOLD,
    depth: int = 1000,
    ndcg_k: int = 3,
    p_k: int = 3,
) -> MetricReport:
    """Per-turn ranking metrics; turns with zero relevant passages are
    excluded from the report (and therefore the means)."""
    report = MetricReport()
    for turn_id, run_ids in runs.items():
        if not judgments.relevant_ids(turn_id, rel_threshold):
            continue
        report.per_turn[turn_id] = {
            "recall": recall(run_ids, judgments, turn_id, rel_threshold, depth),
            f"p@{p_k}": precision_at_k(run_ids, judgments, turn_id, p_k, rel_threshold),
            "map": average_precision(run_ids, judgments, turn_id, rel_threshold),
            "mrr": reciprocal_rank(run_ids, judgments, turn_id, rel_threshold),
            f"ndcg@{ndcg_k}": ndcg_at_k(run_ids, judgments, turn_id, ndcg_k),
        }
    return report


# --- file formats -------------------------------------------------------------


def load_qrels(path: str | Path) -> JudgmentSet:
    judgments = JudgmentSet()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ParseError(lineno, line)
            turn_id, _, passage_id, grade = parts
            try:
                judgments.add(turn_id, passage_id, int(grade))
            except ValueError:
                raise ParseError(lineno, line) from None
    return judgments


@dataclass(frozen=True)
class RunEntry:
    turn_id: str
    passage_id: str
    rank: int
    score: float
    tag: str


def load_run(path: str | Path) -> list[RunEntry]:
    entries = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(" ")
            if len(parts) != 6 or parts[1] != "Q0":
                raise ParseError(lineno, line)
            try:
                entries.append(
                    RunEntry(parts[0], parts[2], int(parts[3]), float(parts[4]), parts[5])
                )
            except ValueError:
                raise ParseError(lineno, line) from None
    return entries


def write_run(path: str | Path, entries: list[RunEntry]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for e in entries:
            f.write(f"{e.turn_id} Q0 {e.passage_id} {e.rank} {e.score:.6f} {e.tag}\n")


def run_entries_from_scored(turn_id: str, scored_entries, tag: str = "convsearch") -> list[RunEntry]:
    return [
        RunEntry(turn_id, e.passage_id, e.rank, e.score, tag) for e in scored_entries
    ]
