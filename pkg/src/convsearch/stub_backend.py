"""Deterministic stub server for all three model endpoints.

Behaviors: /rewrite echoes the prompt segment before [CTX]; /rerank scores
by analyzed-term overlap; /summarize returns the first min_length_words
words of the input. Used as a test fixture and by `convsearch stub-backend`.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .rerank import OverlapScorer

CTX_MARKER = " [CTX] "


def rewrite_behavior(prompt: str) -> str:
    return prompt.split(CTX_MARKER, 1)[0]


def rerank_behavior(pairs: list[tuple[str, str]]) -> list[float]:
    return OverlapScorer().score(pairs)


def summarize_behavior(text: str, min_length_words: int) -> str:
    words = text.split()
    return " ".join(words[: max(min_length_words, 1)])


class _StubHandler(BaseHTTPRequestHandler):
    def log_message(self, *args):  # keep test output quiet
        pass

    def _send_json(self, payload: dict, status: int = 200) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        if self.path == "/health":
            self._send_json({"status": "ok"})
        else:
            self._send_json({"error": "not found"}, 404)

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        try:
            body = json.loads(self.rfile.read(length))
        except json.JSONDecodeError:
            self._send_json({"error": "bad json"}, 400)
            return
        if self.path == "/rewrite":
            self._send_json({"rewritten": rewrite_behavior(body["prompt"])})
        elif self.path == "/rerank":
            pairs = [(p["query"], p["passage"]) for p in body["pairs"]]
            self._send_json({"scores": rerank_behavior(pairs)})
        elif self.path == "/summarize":
            self._send_json(
                {"summary": summarize_behavior(body["text"], body.get("min_length_words", 20))}
            )
        else:
            self._send_json({"error": "not found"}, 404)


class StubServer:
    """Threaded stub server; use as a context manager in tests."""

    def __init__(self, host: str = "127.0.0.1", port: int = 0):
        self.httpd = ThreadingHTTPServer((host, port), _StubHandler)
        self.thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)

    @property
    def base_url(self) -> str:
        host, port = self.httpd.server_address[:2]
        return f"http://{host}:{port}"

    def __enter__(self) -> "StubServer":
        self.thread.start()
        return self

    def __exit__(self, *exc) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()


def serve_forever(host: str = "127.0.0.1", port: int = 8090) -> None:
    httpd = ThreadingHTTPServer((host, port), _StubHandler)
    print(f"stub backend listening on http://{host}:{port}")
    httpd.serve_forever()
