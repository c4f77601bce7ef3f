"""HTTP boundary to served neural models: rewriter, re-rank scorer,
summarizer. JSON bodies over POST; exponential-backoff retries on
unreachable/timeout only. All calls are idempotent model inference, so
retries are always safe.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import requests

from .generate import GenerationParams

RETRY_BASE_DELAY_S = 0.1


@dataclass(frozen=True)
class BackendEndpoint:
    base_url: str
    timeout_ms: int = 10000
    max_retries: int = 2
    capability: str = "rewrite"  # rewrite | rerank | summarize
    bearer_token: str | None = None

    def __post_init__(self):
        if self.timeout_ms <= 0 or self.max_retries < 0:
            raise ValueError("invalid endpoint parameters")


class GatewayError(Exception):
    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind  # unreachable | timeout | bad_status | malformed_response | contract_violation
        self.detail = detail
        self.retriable = kind in ("unreachable", "timeout")


def _headers(endpoint: BackendEndpoint) -> dict[str, str]:
    headers = {"Content-Type": "application/json"}
    if endpoint.bearer_token:
        headers["Authorization"] = f"Bearer {endpoint.bearer_token}"
    return headers


def _post(endpoint: BackendEndpoint, route: str, body: dict) -> dict:
    url = endpoint.base_url.rstrip("/") + route
    timeout = endpoint.timeout_ms / 1000.0
    attempt = 0
    while True:
        try:
            response = requests.post(url, json=body, headers=_headers(endpoint), timeout=timeout)
        except requests.Timeout as e:
            error = GatewayError("timeout", str(e))
        except requests.ConnectionError as e:
            error = GatewayError("unreachable", str(e))
        else:
            if not 200 <= response.status_code < 300:
                # 5xx is transient server trouble; retried like unreachable
                if response.status_code >= 500 and attempt < endpoint.max_retries:
                    time.sleep(RETRY_BASE_DELAY_S * (2**attempt))
                    attempt += 1
                    continue
                raise GatewayError("bad_status", f"HTTP {response.status_code}")
            try:
                return response.json()
            except ValueError as e:
                raise GatewayError("malformed_response", str(e)) from e
        if error.retriable and attempt < endpoint.max_retries:
            time.sleep(RETRY_BASE_DELAY_S * (2**attempt))
            attempt += 1
            continue
        raise error


def call_rewrite(endpoint: BackendEndpoint, prompt: str, max_output_tokens: int = 64) -> str:
    body = {"prompt": prompt, "max_output_tokens": max_output_tokens}
    response = _post(endpoint, "/rewrite", body)
    rewritten = response.get("rewritten")
    if not isinstance(rewritten, str) or not rewritten.strip():
        raise GatewayError("contract_violation", "missing or empty 'rewritten'")
    return rewritten


def call_rerank(endpoint: BackendEndpoint, pairs: list[tuple[str, str]]) -> list[float]:
    if not pairs:
        raise ValueError("batch must be non-empty")
    body = {"pairs": [{"query": q, "passage": p} for q, p in pairs]}
    response = _post(endpoint, "/rerank", body)
    scores = response.get("scores")
    if not isinstance(scores, list) or len(scores) != len(pairs):
        raise GatewayError("contract_violation", "scores missing or length mismatch")
    for s in scores:
        if not isinstance(s, (int, float)) or not 0.0 <= s <= 1.0:
            raise GatewayError("contract_violation", f"score {s!r} outside [0,1]")
    return [float(s) for s in scores]


def call_summarize(endpoint: BackendEndpoint, text: str, params: GenerationParams) -> str:
    body = {
        "text": text,
        "num_beams": params.num_beams,
        "no_repeat_ngram": params.no_repeat_ngram,
        "early_stop_sentences": params.early_stop_sentences,
        "min_length_words": params.min_length_words,
        "max_length_words": params.max_length_words or len(text.split()),
    }
    response = _post(endpoint, "/summarize", body)
    summary = response.get("summary")
    if not isinstance(summary, str) or not summary.strip():
        raise GatewayError("contract_violation", "missing or empty 'summary'")
    return summary


def health(endpoint: BackendEndpoint) -> tuple[bool, str]:
    url = endpoint.base_url.rstrip("/") + "/health"
    try:
        response = requests.get(url, headers=_headers(endpoint), timeout=endpoint.timeout_ms / 1000.0)
    except requests.RequestException as e:
        return False, str(e)
    if 200 <= response.status_code < 300:
        return True, "ok"
    return False, f"HTTP {response.status_code}"


# Adapters matching the backend protocols of context/rerank/generate.


@dataclass
class GatewayRewriter:
    endpoint: BackendEndpoint

    def rewrite(self, prompt: str, max_output_tokens: int) -> str:
        return call_rewrite(self.endpoint, prompt, max_output_tokens)


@dataclass
class GatewayScorer:
    endpoint: BackendEndpoint

    def score(self, pairs: list[tuple[str, str]]) -> list[float]:
        return call_rerank(self.endpoint, pairs)


@dataclass
class GatewaySummarizer:
    endpoint: BackendEndpoint

    def summarize(self, text: str, params: GenerationParams) -> str:
        return call_summarize(self.endpoint, text, params)
