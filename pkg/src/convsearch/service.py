"""HTTP session API for the live assistant.

POST /sessions            -> {"session_id": ...}
POST /sessions/{id}/turns -> TurnResult for the submitted query
GET  /sessions/{id}       -> full transcript
GET  /healthz             -> 200 when the index is loaded, 503 otherwise

Turns within one session are serialized behind a per-session lock; distinct
sessions run concurrently.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import asdict, dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .context import ConversationSession
from .index import Index
from .pipeline import PipelineConfig, TurnResult, process_turn


class TurnRequest(BaseModel):
    query: str


@dataclass
class ServiceState:
    index: Index | None = None
    config: PipelineConfig = field(default_factory=PipelineConfig)
    sessions: dict[str, ConversationSession] = field(default_factory=dict)
    locks: dict[str, threading.Lock] = field(default_factory=dict)
    registry_lock: threading.Lock = field(default_factory=threading.Lock)


def _turn_result_json(result: TurnResult) -> dict:
    return {
        "turn_number": result.turn_number,
        "raw_query": result.raw_query,
        "rewritten_query": result.rewritten_query,
        "degraded_flags": result.degraded_flags,
        "ranked": [asdict(p) for p in result.ranked],
        "answer": {
            "text": result.answer.text,
            "mode": result.answer.mode,
            "source_passage_ids": result.answer.source_passage_ids,
        },
        "timings_ms": result.timings_ms,
    }


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="convsearch")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.get("/healthz")
    def healthz():
        if state.index is None:
            raise HTTPException(status_code=503, detail="index not loaded")
        return {"status": "ok", "doc_count": state.index.doc_count}

    @app.post("/sessions")
    def create_session():
        if state.index is None:
            raise HTTPException(status_code=503, detail="index not loaded")
        session_id = uuid.uuid4().hex[:12]
        with state.registry_lock:
            state.sessions[session_id] = ConversationSession(session_id=session_id)
            state.locks[session_id] = threading.Lock()
        return {"session_id": session_id}

    @app.post("/sessions/{session_id}/turns")
    def submit_turn(session_id: str, request: TurnRequest):
        if state.index is None:
            raise HTTPException(status_code=503, detail="index not loaded")
        session = state.sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        if not request.query.strip():
            raise HTTPException(status_code=422, detail="empty query")
        with state.locks[session_id]:
            result = process_turn(session, request.query, state.config, state.index)
        return _turn_result_json(result)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = state.sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return {
            "session_id": session.session_id,
            "topic_label": session.topic_label,
            "turns": [
                {
                    "turn_number": t.turn_number,
                    "raw_query": t.raw_query,
                    "rewritten_query": t.rewritten_query,
                    "top_passage_id": t.top_passage_id,
                    "answer": t.answer,
                }
                for t in session.turns
            ],
        }

    return app


def serve(state: ServiceState, host: str = "127.0.0.1", port: int = 8080) -> None:
    import uvicorn

    uvicorn.run(create_app(state), host=host, port=port, log_level="warning")
