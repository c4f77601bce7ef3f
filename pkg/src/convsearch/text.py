"""Deterministic text analysis shared by indexing, retrieval, prompts, and metrics.

Tokenization is the alphanumeric-run rule: maximal runs of [a-z0-9] after
lowercasing, everything else is a separator. Stemming is the classic Porter
(1980) algorithm. Sentence splitting is terminator-plus-whitespace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

_TOKEN_RE = re.compile(r"[a-z0-9]+")
_SENTENCE_RE = re.compile(r"(?<=[.!?])\s+")


def _load_default_stopwords() -> frozenset[str]:
    path = Path(__file__).parent / "stopwords.txt"
    with open(path, encoding="utf-8") as f:
        return frozenset(line.strip() for line in f if line.strip())


DEFAULT_STOPWORDS = _load_default_stopwords()


@dataclass(frozen=True)
class Token:
    surface: str
    position: int


@dataclass(frozen=True)
class AnalyzerConfig:
    lowercase: bool = True
    stopword_list: frozenset[str] = field(default_factory=lambda: DEFAULT_STOPWORDS)
    stemmer: str = "porter"  # "none" or "porter"


def tokenize(text: str) -> list[Token]:
    """Lowercased maximal alphanumeric runs, positions 0-based in match order."""
    if text and not isinstance(text, str):
        raise TypeError("text must be a string")
    lowered = text.lower()
    return [Token(m.group(), i) for i, m in enumerate(_TOKEN_RE.finditer(lowered))]


def remove_stopwords(tokens: list[Token], config: AnalyzerConfig) -> list[Token]:
    """Drop tokens whose surface is in the stopword list, keeping positions."""
    return [t for t in tokens if t.surface not in config.stopword_list]


def split_sentences(text: str) -> list[str]:
    """Split after '.', '!' or '?' followed by whitespace (or end of text).

    Abbreviations are not special-cased; the callers only need approximate
    boundaries. Surrounding whitespace is stripped from each segment.
    """
    parts = [p.strip() for p in _SENTENCE_RE.split(text)]
    return [p for p in parts if p]


# --- Porter stemmer -----------------------------------------------------------
# Classic Porter (1980). Words of length <= 2 are returned unchanged.

_VOWELS = frozenset("aeiou")


def _is_cons(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        return i == 0 or not _is_cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    # number of VC sequences in [C](VC)^m[V]
    m = 0
    i = 0
    n = len(stem)
    while i < n and _is_cons(stem, i):
        i += 1
    while i < n:
        while i < n and not _is_cons(stem, i):
            i += 1
        if i >= n:
            break
        m += 1
        while i < n and _is_cons(stem, i):
            i += 1
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _double_cons(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_cons(word, len(word) - 1)


def _cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    n = len(word)
    return (
        _is_cons(word, n - 3)
        and not _is_cons(word, n - 2)
        and _is_cons(word, n - 1)
        and word[-1] not in "wxy"
    )


_STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]

_STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

_STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
    "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def stem(word: str) -> str:
    """Porter stem of a lowercase token. Length <= 2 is returned as-is."""
    if len(word) <= 2:
        return word

    # Step 1a
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ies"):
        word = word[:-2]
    elif word.endswith("ss"):
        pass
    elif word.endswith("s"):
        word = word[:-1]

    # Step 1b
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            word = word[:-1]
    else:
        cleanup = False
        if word.endswith("ed") and _has_vowel(word[:-2]):
            word = word[:-2]
            cleanup = True
        elif word.endswith("ing") and _has_vowel(word[:-3]):
            word = word[:-3]
            cleanup = True
        if cleanup:
            if word.endswith(("at", "bl", "iz")):
                word += "e"
            elif _double_cons(word) and word[-1] not in "lsz":
                word = word[:-1]
            elif _measure(word) == 1 and _cvc(word):
                word += "e"

    # Step 1c
    if word.endswith("y") and _has_vowel(word[:-1]):
        word = word[:-1] + "i"

    # Step 2
    for suffix, repl in _STEP2:
        if word.endswith(suffix):
            base = word[: -len(suffix)]
            if _measure(base) > 0:
                word = base + repl
            break

    # Step 3
    for suffix, repl in _STEP3:
        if word.endswith(suffix):
            base = word[: -len(suffix)]
            if _measure(base) > 0:
                word = base + repl
            break

    # Step 4
    for suffix in _STEP4:
        if word.endswith(suffix):
            base = word[: -len(suffix)]
            if _measure(base) > 1:
                if suffix == "ion" and (not base or base[-1] not in "st"):
                    break
                word = base
            break

    # Step 5a
    if word.endswith("e"):
        base = word[:-1]
        m = _measure(base)
        if m > 1 or (m == 1 and not _cvc(base)):
            word = base

    # Step 5b
    if _measure(word) > 1 and _double_cons(word) and word.endswith("l"):
        word = word[:-1]

    return word


def analyze(text: str, config: AnalyzerConfig | None = None) -> list[str]:
    """Full pipeline: tokenize, remove stopwords, stem. Returns surfaces."""
    config = config or AnalyzerConfig()
    tokens = tokenize(text)
    tokens = remove_stopwords(tokens, config)
    if config.stemmer == "porter":
        return [stem(t.surface) for t in tokens]
    return [t.surface for t in tokens]
