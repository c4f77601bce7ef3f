"""Independent brute-force oracles, implemented straight from the metric
definitions. Deliberately naive: no shared code with the package beyond
plain tokenization inputs.
"""

from __future__ import annotations

import math
import re
from collections import Counter

_WORD = re.compile(r"[a-z0-9]+")


def toks(text: str) -> list[str]:
    return _WORD.findall(text.lower())


# --- ranking ------------------------------------------------------------------


def oracle_precision_at_k(grades_in_rank_order, k, threshold=2):
    hits = 0
    for g in grades_in_rank_order[:k]:
        if g >= threshold:
            hits += 1
    return hits / k


def oracle_recall(run_ids, rel_set, depth=1000):
    if not rel_set:
        return 0.0
    found = 0
    for pid in rel_set:
        if pid in run_ids[:depth]:
            found += 1
    return found / len(rel_set)


def oracle_average_precision(run_ids, rel_set):
    if not rel_set:
        return 0.0
    total = 0.0
    seen = 0
    for i, pid in enumerate(run_ids):
        if pid in rel_set:
            seen += 1
            total += seen / (i + 1)
    return total / len(rel_set)


def oracle_reciprocal_rank(run_ids, rel_set):
    for i, pid in enumerate(run_ids):
        if pid in rel_set:
            return 1.0 / (i + 1)
    return 0.0


def oracle_ndcg_at_k(grades_in_rank_order, all_grades, k, exponential=True):
    def gain(g):
        return 2**g - 1 if exponential else g

    dcg = 0.0
    for i, g in enumerate(grades_in_rank_order[:k]):
        dcg += gain(g) / math.log2(i + 2)
    ideal = sorted(all_grades, reverse=True)
    idcg = 0.0
    for i, g in enumerate(ideal[:k]):
        idcg += gain(g) / math.log2(i + 2)
    if idcg == 0:
        return 0.0
    return dcg / idcg


# --- retrieval closed forms ---------------------------------------------------


def oracle_bm25_term(tf, df, n_docs, dl, avgdl, k1, b):
    idf = math.log(1 + (n_docs - df + 0.5) / (df + 0.5))
    return idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avgdl))


def oracle_lmd_term(qtf, tf, cf, collection_size, dl, mu):
    return qtf * math.log((tf + mu * cf / collection_size) / (dl + mu))


def oracle_lmjm_term(qtf, tf, cf, collection_size, dl, lam):
    return qtf * math.log((1 - lam) * tf / dl + lam * cf / collection_size)


# --- text metrics -------------------------------------------------------------


def oracle_bleu4(pairs):
    """pairs: list of (hypothesis, [references]) as raw strings."""
    matched = [0, 0, 0, 0]
    total = [0, 0, 0, 0]
    c = 0
    r = 0
    for hyp_text, ref_texts in pairs:
        hyp = toks(hyp_text)
        refs = [toks(t) for t in ref_texts]
        c += len(hyp)
        best = None
        for ref in refs:
            key = (abs(len(ref) - len(hyp)), len(ref))
            if best is None or key < best:
                best = key
        r += best[1]
        for n in range(1, 5):
            hyp_grams = Counter(tuple(hyp[i:i + n]) for i in range(len(hyp) - n + 1))
            clipped = 0
            for gram, count in hyp_grams.items():
                max_in_refs = 0
                for ref in refs:
                    ref_count = 0
                    for i in range(len(ref) - n + 1):
                        if tuple(ref[i:i + n]) == gram:
                            ref_count += 1
                    max_in_refs = max(max_in_refs, ref_count)
                clipped += min(count, max_in_refs)
            matched[n - 1] += clipped
            total[n - 1] += max(len(hyp) - n + 1, 0)
    precisions = []
    for m, t in zip(matched, total):
        if t == 0 or m == 0:
            return 0.0
        precisions.append(m / t)
    geo = math.exp(sum(math.log(p) for p in precisions) / 4)
    bp = 1.0 if c > r else math.exp(1 - r / max(c, 1))
    return bp * geo


def oracle_lcs(a, b):
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[len(a)][len(b)]


def oracle_rouge_l(hyp_text, ref_texts):
    hyp = toks(hyp_text)
    if not hyp:
        return 0.0
    best = 0.0
    for ref_text in ref_texts:
        ref = toks(ref_text)
        if not ref:
            continue
        lcs = oracle_lcs(hyp, ref)
        p = lcs / len(hyp)
        r = lcs / len(ref)
        f1 = 2 * p * r / (p + r) if p + r else 0.0
        best = max(best, f1)
    return best


def oracle_meteor(hyp_text, ref_texts, stemmer):
    """Exhaustive greedy alignment replicated step by step; `stemmer` is the
    implementation under audit for the stem pass (the alignment and scoring
    logic here are independent)."""
    hyp = toks(hyp_text)
    if not hyp:
        return 0.0
    best = 0.0
    for ref_text in ref_texts:
        ref = toks(ref_text)
        if not ref:
            continue
        matches = []
        used_ref = set()
        used_hyp = set()
        for i in range(len(hyp)):
            for j in range(len(ref)):
                if j in used_ref:
                    continue
                if hyp[i] == ref[j]:
                    matches.append((i, j))
                    used_ref.add(j)
                    used_hyp.add(i)
                    break
        for i in range(len(hyp)):
            if i in used_hyp:
                continue
            for j in range(len(ref)):
                if j in used_ref:
                    continue
                if stemmer(hyp[i]) == stemmer(ref[j]):
                    matches.append((i, j))
                    used_ref.add(j)
                    used_hyp.add(i)
                    break
        m = len(matches)
        if m == 0:
            continue
        matches.sort()
        chunks = 1
        for a, b in zip(matches, matches[1:]):
            if not (b[0] == a[0] + 1 and b[1] == a[1] + 1):
                chunks += 1
        p = m / len(hyp)
        r = m / len(ref)
        fmean = 10 * p * r / (r + 9 * p)
        penalty = 0.5 * (chunks / m) ** 3
        best = max(best, fmean * (1 - penalty))
    return best
