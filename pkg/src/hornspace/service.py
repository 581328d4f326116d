"""HTTP/JSON service hosting interactive elicitation sessions.

Each session is backed by an append-only JSON-lines event log: one config
line, then one line per classified or answered query.  The log is flushed to
disk before any answer is acknowledged, and restarting the service replays
the logs, so a rebuilt service returns byte-identical state.  Mutations are
serialized per session; distinct sessions are fully independent.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .enumeration import enumerate_members
from .model import HornspaceError, dump_rules, to_dimacs
from .query import Query, QuerySession, SessionOptions, TraceEntry

FAMILY_COUNT_BUDGET = 4096

_DONE_TEXT = {
    "exhausted": "universe determined",
    "stage-settled": "stage criterion met",
}


class SessionConfig(BaseModel):
    n: int = Field(ge=1)
    labels: list[str] | None = None
    mode: str = "revised"
    policy: str = "asc"
    criticalize: bool = False
    proper_guard: bool = False
    stage_stop: bool = False


class AnswerBody(BaseModel):
    query_id: int
    answer: str  # "yes" | "no"


class StoredSession:
    """One session: the engine, its durable log, and a writer lock."""

    def __init__(self, session_id: str, config: SessionConfig, path: Path):
        self.id = session_id
        self.config = config
        self.path = path
        self.lock = threading.Lock()
        self.events: list[dict] = []
        self.answered: dict[int, tuple[str, bool]] = {}  # query id -> (answer, guard rejected)
        self.session = QuerySession(
            config.n,
            mode=config.mode,  # type: ignore[arg-type]
            direction=config.policy,  # type: ignore[arg-type]
            options=SessionOptions(config.criticalize, config.proper_guard, config.stage_stop),
            labels=tuple(config.labels) if config.labels else None,
        )
        self._trace_seen = 0

    # -- durable log ---------------------------------------------------------

    def _append(self, event: dict) -> None:
        self.events.append(event)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, separators=(",", ":")) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def _log_new_classifications(self) -> None:
        for entry in self.session.trace[self._trace_seen:]:
            self._trace_seen += 1
            if entry.kind in ("posinf", "negainf", "unreached"):
                self._append(self._classification_event(entry))

    def _classification_event(self, entry: TraceEntry) -> dict:
        event = {
            "type": "inference",
            "query_id": entry.query_id,
            "query": _query_doc(entry.query),
            "kind": entry.kind,
            "ts": time.time(),
        }
        if entry.witness is not None:
            event["witness"] = {"if": list(entry.witness.antecedent),
                                "then": entry.witness.consequent}
        return event

    # -- protocol ------------------------------------------------------------

    def advance(self) -> tuple[int, Query] | None:
        pending = self.session.next_query()
        self._log_new_classifications()
        return pending

    def apply_answer(self, query_id: int, answer: str, *, ts: float | None = None,
                     log: bool = True) -> TraceEntry:
        entry = self.session.record_answer(query_id, answer == "yes")
        self._trace_seen += 1
        self.answered[query_id] = (answer, entry.guard_rejected)
        if log:
            self._append({
                "type": "answer",
                "query_id": query_id,
                "query": _query_doc(entry.query),
                "answer": answer,
                "guard_rejected": entry.guard_rejected,
                "ts": ts if ts is not None else time.time(),
            })
        return entry


def _query_doc(query: Query) -> dict:
    return {"if": list(query.antecedent), "then": query.consequent}


class SessionStore:
    """All live sessions plus their on-disk logs."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, StoredSession] = {}
        for path in sorted(self.data_dir.glob("*.jsonl")):
            stored = self._replay(path)
            self.sessions[stored.id] = stored

    def _replay(self, path: Path) -> StoredSession:
        lines = [json.loads(line) for line in path.read_text().splitlines() if line.strip()]
        if not lines or lines[0].get("type") != "config":
            raise HornspaceError(f"corrupt session log {path}: missing config line")
        config = SessionConfig(**{k: v for k, v in lines[0].items()
                                  if k not in ("type", "ts", "id")})
        stored = StoredSession(lines[0]["id"], config, path)
        for event in lines[1:]:
            if event["type"] != "answer":
                continue  # classifications are recomputed deterministically
            pending = stored.session.next_query()
            stored._trace_seen = len(stored.session.trace)
            if pending is None or pending[0] != event["query_id"]:
                raise HornspaceError(f"corrupt session log {path}: answer for query "
                                     f"{event['query_id']} does not match replayed state")
            stored.apply_answer(event["query_id"], event["answer"], log=False)
        stored.session.next_query()
        stored._trace_seen = len(stored.session.trace)
        stored.events = lines[1:]
        return stored

    def create(self, config: SessionConfig) -> StoredSession:
        session_id = uuid.uuid4().hex
        path = self.data_dir / f"{session_id}.jsonl"
        stored = StoredSession(session_id, config, path)
        header = {"type": "config", "id": session_id, "ts": time.time(),
                  **config.model_dump()}
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(header, separators=(",", ":")) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        self.sessions[session_id] = stored
        return stored

    def get(self, session_id: str) -> StoredSession:
        stored = self.sessions.get(session_id)
        if stored is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id}")
        return stored

    def delete(self, session_id: str) -> None:
        stored = self.get(session_id)
        self.sessions.pop(session_id, None)
        stored.path.unlink(missing_ok=True)


def _progress(stored: StoredSession) -> dict:
    s = stored.session
    classified = s.posed + s.inferred_positive + s.inferred_negative
    return {
        "posed": s.posed,
        "yes": s.yes_count,
        "no": s.no_count,
        "inferred_positive": s.inferred_positive,
        "inferred_negative": s.inferred_negative,
        "guard_rejected": s.guard_rejected,
        "total_queries": s.total_queries,
        "remaining": s.total_queries - classified,
    }


def create_app(data_dir: str | Path) -> FastAPI:
    app = FastAPI(title="hornspace session service")
    store = SessionStore(data_dir)
    app.state.store = store

    @app.post("/sessions", status_code=201)
    def create_session(config: SessionConfig):
        if config.mode not in ("original", "revised"):
            raise HTTPException(422, f"unknown mode {config.mode!r}")
        if config.policy not in ("asc", "desc"):
            raise HTTPException(422, f"unknown policy {config.policy!r}")
        if config.labels is not None and len(config.labels) != config.n:
            raise HTTPException(422, f"expected {config.n} labels, got {len(config.labels)}")
        stored = store.create(config)
        return {"id": stored.id, "config": config.model_dump()}

    @app.get("/sessions/{session_id}/next")
    def get_next(session_id: str):
        stored = store.get(session_id)
        with stored.lock:
            pending = stored.advance()
            if pending is None:
                reason = stored.session.done_reason or "exhausted"
                return {"done": True,
                        "reason": _DONE_TEXT.get(reason, reason),
                        "progress": _progress(stored)}
            query_id, query = pending
            return {
                "done": False,
                "query": {
                    "id": query_id,
                    "if": list(query.antecedent),
                    "then": query.consequent,
                    "if_labels": [stored.session.label_of(i) for i in query.antecedent],
                    "then_label": stored.session.label_of(query.consequent),
                    "prompt": stored.session.render_prompt(query),
                },
                "progress": _progress(stored),
            }

    @app.post("/sessions/{session_id}/answer")
    def post_answer(session_id: str, body: AnswerBody):
        if body.answer not in ("yes", "no"):
            raise HTTPException(422, f"answer must be 'yes' or 'no', got {body.answer!r}")
        stored = store.get(session_id)
        with stored.lock:
            previous = stored.answered.get(body.query_id)
            if previous is not None:
                if previous[0] != body.answer:
                    raise HTTPException(409, f"query {body.query_id} already answered "
                                             f"{previous[0]!r}")
                return {"accepted": True, "duplicate": True, "guard_rejected": previous[1],
                        "progress": _progress(stored)}
            pending = stored.session.pending
            if pending is None or pending[0] != body.query_id:
                raise HTTPException(409, f"query {body.query_id} is not the pending query")
            entry = stored.apply_answer(body.query_id, body.answer)
            return {"accepted": True, "duplicate": False,
                    "guard_rejected": entry.guard_rejected,
                    "progress": _progress(stored)}

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        stored = store.get(session_id)
        with stored.lock:
            s = stored.session
            inferences = [e for e in stored.events if e["type"] == "inference"]
            return {
                "id": stored.id,
                "mode": s.mode,
                "policy": s.direction,
                "n": s.n,
                "labels": list(s.labels) if s.labels else None,
                "yes_rules": [{"if": list(r.antecedent), "then": r.consequent}
                              for r in s.yes_rules],
                "no_queries": [_query_doc(q) for q in s.no_queries],
                "progress": _progress(stored),
                "done": s.done_reason is not None and s.pending is None,
                "recent_inferences": inferences[-50:],
            }

    @app.get("/sessions/{session_id}/family")
    def get_family(session_id: str, limit: int = 50):
        stored = store.get(session_id)
        with stored.lock:
            rules = stored.session.yes_ruleset()
            members: list[list[int]] = []
            total: int | None = None
            scanned = 0
            for xs in enumerate_members(rules):
                scanned += 1
                if limit > 0 and len(members) < limit:
                    members.append(list(xs))
                if scanned > FAMILY_COUNT_BUDGET:
                    break
            else:
                total = scanned
            return {
                "members": members,
                "member_labels": [[stored.session.label_of(i) for i in xs]
                                  for xs in members],
                "total": total,
                "truncated": total is None or (limit > 0 and total > limit),
            }

    @app.get("/sessions/{session_id}/export")
    def export_session(session_id: str, format: str = "rules"):
        stored = store.get(session_id)
        with stored.lock:
            rules = stored.session.yes_ruleset()
            if format == "rules":
                return PlainTextResponse(dump_rules(rules))
            if format == "cnf":
                return PlainTextResponse(to_dimacs(rules))
            raise HTTPException(422, f"unknown format {format!r}")

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        store.delete(session_id)

    return app


def serve(data_dir: str | Path, host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(create_app(data_dir), host=host, port=port, log_level="warning")
