"""Config file loading for the CLI and service.

A config is a JSON object; every key is optional and falls back to the
pipeline defaults. Documented keys:

    index_path      str, path written by `index build`
    retrieval       {kind: bm25|lmd|lmjm, k1, b, mu, lambda}
    first_stage_k   int, first-stage candidate depth
    rerank_depth    int, re-ranked block size (<= first_stage_k)
    generation      {num_beams, no_repeat_ngram, early_stop_sentences,
                     min_length_words, max_length_words, top_n_passages}
    backends        {rewriter_url, reranker_url, summarizer_url,
                     timeout_ms, max_retries, bearer_token}
    fallback        {rewrite: bool, rerank: bool, summary: bool}
    run_tag         str, tag column of emitted run files

Backend URLs and the timeout can also come from the environment
(REWRITER_URL, RERANKER_URL, SUMMARIZER_URL, BACKEND_TIMEOUT_MS), which
overrides the file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .generate import GenerationParams
from .pipeline import BackendConfig, PipelineConfig
from .retrieval import RetrievalModel


def load_config(path: str | Path | None) -> tuple[PipelineConfig, str | None]:
    """Returns (pipeline config, index_path or None)."""
    raw: dict = {}
    if path is not None:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)

    retrieval_raw = dict(raw.get("retrieval", {}))
    if "lambda" in retrieval_raw:
        retrieval_raw["lambda_"] = retrieval_raw.pop("lambda")
    retrieval = RetrievalModel(**retrieval_raw)
    generation = GenerationParams(**raw.get("generation", {}))
    backends = BackendConfig.from_env(BackendConfig(**raw.get("backends", {})))
    fallback = raw.get("fallback", {})

    config = PipelineConfig(
        retrieval=retrieval,
        first_stage_k=raw.get("first_stage_k", 50),
        rerank_depth=raw.get("rerank_depth", 50),
        generation=generation,
        backends=backends,
        fallback_rewrite=fallback.get("rewrite", True),
        fallback_rerank=fallback.get("rerank", True),
        fallback_summary=fallback.get("summary", True),
        run_tag=raw.get("run_tag", "convsearch"),
    )
    return config, raw.get("index_path")
