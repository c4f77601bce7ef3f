"""Conversational search assistant: context tracking via query rewriting,
lexical first-stage retrieval, neural re-ranking, and abstractive answer
generation, with a batch evaluation harness and HTTP service."""

__version__ = "0.1.0"
