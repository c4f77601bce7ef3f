"""Per-session conversational state and context-independent query production.

The rewrite prompt puts the current query first, then the history oldest to
newest: "q_i [CTX] q_1 p_1 [TURN] q_2 p_2 ...". Passage text enters a history
block only when the turn recorded one (first two sentences of its top-ranked
passage). A deterministic rule-based rewriter stands in when no neural
backend is reachable.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol

from .text import split_sentences

CTX_SEP = " [CTX] "
TURN_SEP = " [TURN] "
PROMPT_TOKEN_BUDGET = 512
REWRITE_OUTPUT_TOKEN_CAP = 64

# whitespace tokens to estimated subword tokens
SUBWORD_INFLATION = 1.35

_PRONOUN_RE = re.compile(r"\b(its|his|her|their|it|he|she|they|them)\b", re.IGNORECASE)
_POSSESSIVE = {"its", "his", "her", "their"}


class BudgetTooSmall(Exception):
    pass


class RewriterUnavailable(Exception):
    pass


@dataclass
class ConversationTurn:
    turn_number: int
    raw_query: str
    rewritten_query: str | None = None
    top_passage_text: str | None = None
    top_passage_id: str | None = None
    answer: str | None = None


@dataclass
class ConversationSession:
    session_id: str
    topic_label: str | None = None
    turns: list[ConversationTurn] = field(default_factory=list)

    def append_turn(self, turn: ConversationTurn) -> None:
        expected = len(self.turns) + 1
        if turn.turn_number != expected:
            raise ValueError(f"turn_number {turn.turn_number}, expected {expected}")
        self.turns.append(turn)


@dataclass(frozen=True)
class RewritePrompt:
    text: str
    token_estimate: int


def estimate_tokens(text: str) -> int:
    """Whitespace tokens inflated by the subword factor, rounded up."""
    words = len(text.split())
    return math.ceil(words * SUBWORD_INFLATION)


def _history_block(turn: ConversationTurn) -> str:
    block = turn.raw_query
    if turn.top_passage_text:
        passage_head = " ".join(split_sentences(turn.top_passage_text)[:2])
        block = f"{block} {passage_head}"
    return block


def build_rewrite_prompt(session: ConversationSession, current_query: str) -> RewritePrompt:
    blocks = [_history_block(t) for t in session.turns]
    if blocks:
        text = current_query + CTX_SEP + TURN_SEP.join(blocks)
    else:
        text = current_query
    return RewritePrompt(text=text, token_estimate=estimate_tokens(text))


def truncate_prompt(prompt: RewritePrompt, budget: int = PROMPT_TOKEN_BUDGET) -> RewritePrompt:
    """Drop whole history blocks oldest-first until the estimate fits."""
    if prompt.token_estimate <= budget:
        return prompt
    if CTX_SEP not in prompt.text:
        raise BudgetTooSmall(f"current query alone estimates {prompt.token_estimate} > {budget}")
    current, history = prompt.text.split(CTX_SEP, 1)
    if estimate_tokens(current) > budget:
        raise BudgetTooSmall(f"current query alone exceeds budget {budget}")
    blocks = history.split(TURN_SEP)
    while blocks:
        blocks = blocks[1:]
        text = current + CTX_SEP + TURN_SEP.join(blocks) if blocks else current
        estimate = estimate_tokens(text)
        if estimate <= budget:
            return RewritePrompt(text=text, token_estimate=estimate)
    return RewritePrompt(text=current, token_estimate=estimate_tokens(current))


class RewriterBackend(Protocol):
    def rewrite(self, prompt: str, max_output_tokens: int) -> str: ...


@dataclass(frozen=True)
class RewriteResult:
    text: str
    degraded: bool


def _cap_output_tokens(text: str, cap: int) -> str:
    words = text.split()
    if len(words) <= cap:
        return text.strip()
    return " ".join(words[:cap])


def rewrite(
    session: ConversationSession,
    current_query: str,
    backend: RewriterBackend | None,
    fallback: bool = True,
) -> RewriteResult:
    """Backend rewrite with the rule-based fallback on failure."""
    prompt = truncate_prompt(build_rewrite_prompt(session, current_query))
    if backend is not None:
        try:
            out = backend.rewrite(prompt.text, REWRITE_OUTPUT_TOKEN_CAP)
            return RewriteResult(_cap_output_tokens(out, REWRITE_OUTPUT_TOKEN_CAP), degraded=False)
        except Exception:
            if not fallback:
                raise
            return RewriteResult(fallback_rewrite(session, current_query), degraded=True)
    if not fallback:
        raise RewriterUnavailable("no backend and fallback disabled")
    return RewriteResult(fallback_rewrite(session, current_query), degraded=False)


def _strip_edges(token: str) -> str:
    return token.strip(".,!?;:'\"()")


def _entity_runs(query: str) -> list[str]:
    """Capitalized token runs, skipping the sentence-initial token and 'I'."""
    words = [_strip_edges(w) for w in query.split()]
    runs: list[str] = []
    current: list[str] = []
    for i, w in enumerate(words):
        capitalized = bool(w) and w[0].isupper() and w != "I" and i > 0
        if capitalized:
            current.append(w)
        elif current:
            runs.append(" ".join(current))
            current = []
    if current:
        runs.append(" ".join(current))
    return runs


def fallback_rewrite(session: ConversationSession, current_query: str) -> str:
    """Deterministic heuristic rewriter: pronoun substitution, else topic
    anchoring with the newest entity from prior raw queries."""
    if not session.turns:
        return current_query

    entities: list[str] = []
    for turn in reversed(session.turns):
        entities.extend(_entity_runs(turn.raw_query))
    if not entities:
        return current_query
    entity = entities[0]

    match = _PRONOUN_RE.search(current_query)
    if match:
        replacement = entity + "'s" if match.group().lower() in _POSSESSIVE else entity
        return current_query[: match.start()] + replacement + current_query[match.end() :]

    query_tokens = {_strip_edges(w).lower() for w in current_query.split()}
    entity_tokens = {t.lower() for e in entities for t in e.split()}
    if query_tokens & entity_tokens:
        return current_query

    stripped = current_query.rstrip()
    if stripped.endswith("?") or stripped.endswith("."):
        return f"{stripped[:-1].rstrip()} in {entity}{stripped[-1]}"
    return f"{stripped} in {entity}"


def save_sessions(sessions: list[ConversationSession], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for s in sessions:
            record = {
                "session_id": s.session_id,
                "topic_label": s.topic_label,
                "turns": [vars(t) for t in s.turns],
            }
            f.write(json.dumps(record, ensure_ascii=False) + "\n")


def load_sessions(path: str | Path) -> list[ConversationSession]:
    sessions = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            record = json.loads(line)
            turns = [ConversationTurn(**t) for t in record["turns"]]
            sessions.append(
                ConversationSession(record["session_id"], record.get("topic_label"), turns)
            )
    return sessions
