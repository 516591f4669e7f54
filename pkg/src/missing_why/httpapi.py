"""HTTP surface over the session service.

Endpoints mirror the service operations one to one; errors map to their
machine-readable codes with user-facing messages.  Requests for the same
session are strictly serialized by a per-session lock, except cancellation,
which must reach a computation already in flight.
"""

from __future__ import annotations

import threading

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse

from . import service
from .abduction import parse_fixpoint_blocks
from .cancellation import CancelToken
from .errors import MissingWhyError, SessionNotFound
from .graphdoc import graph_to_dot, graph_to_json
from .parsing import parse
from .service import ExplanationResult, GraphPayload, Session
from .syntax import Signature, render

_STATUS = {
    "session_not_found": 404,
    "index_out_of_range": 404,
    "already_entailed": 409,
    "inconsistent_with_disjointness": 409,
    "cancelled": 409,
    "is_entailed": 409,
}


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionNotFound(f"no session {session_id}")
        return session


def _signature_from_body(data) -> Signature | None:
    if data is None or data == "ALL":
        return None
    return Signature(
        frozenset(data.get("concepts", ())),
        frozenset(data.get("roles", ())),
        frozenset(data.get("individuals", ())),
    )


def _result_body(result: ExplanationResult, session: Session, k: int) -> dict:
    body = {"method": result.method, "progress": list(result.progress_log)}
    payload = result.payload
    if isinstance(payload, GraphPayload):
        import json as _json

        body["graph"] = _json.loads(graph_to_json(service.result_graph(session, k)))
        if payload.relevant is not None:
            body["relevance"] = {
                "mode": payload.relevant.mode.value,
                "witness": payload.relevant.witness,
                "contrast": payload.relevant.contrast,
                "conditions": [render(c) for c in payload.relevant.conditions],
            }
    else:
        body["hypotheses"] = [
            {
                "axioms": [render(a) for a in h.axioms],
                "verified": h.verified,
                "depth": h.depth,
            }
            for h in payload.hypotheses
        ]
        body["exhausted"] = payload.exhausted
    return body


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="missing-why", version="0.1.0")
    sessions = store or SessionStore()

    @app.exception_handler(MissingWhyError)
    async def _error_handler(request: Request, exc: MissingWhyError):
        status = _STATUS.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.post("/sessions")
    def create_session(body: dict = Body(...)):
        session = service.create_session(body["ontology"])
        sessions.add(session)
        return {"id": session.id, "epoch": session.epoch}

    @app.put("/sessions/{session_id}/query")
    def put_query(session_id: str, body: dict = Body(...)):
        session = sessions.get(session_id)
        with session.lock:
            missing = [parse(s, kind="axiom") for s in body["missing"]]
            service.set_query(session, missing, _signature_from_body(body.get("signature")))
            if body.get("fixpoints"):
                service.attach_fixpoints(session, parse_fixpoint_blocks(body["fixpoints"]))
        return {"ok": True}

    @app.get("/sessions/{session_id}/support")
    def get_support(session_id: str, method: str):
        session = sessions.get(session_id)
        with session.lock:
            support = service.check_support(session, method)
        return {"supported": support.supported, "message": support.message}

    @app.post("/sessions/{session_id}/explain")
    def explain(session_id: str, body: dict = Body(default={})):
        session = sessions.get(session_id)
        with session.lock:
            token = CancelToken()
            result = service.generate_explanations(
                session,
                body.get("method", service.SMALL_MODEL),
                page_size=body.get("page_size", 5),
                cancel=token,
            )
            return _result_body(
                result, session, body.get("max_classes", service.DEFAULT_LABEL_COUNT)
            )

    @app.post("/sessions/{session_id}/disjointnesses")
    def add_disjointness(session_id: str, body: dict = Body(...)):
        session = sessions.get(session_id)
        with session.lock:
            service.mutate_disjointnesses(session, add=body["names"])
            return {"pending": [render(a) for a in session.pending_disjointnesses]}

    @app.delete("/sessions/{session_id}/disjointnesses/{index}")
    def remove_disjointness(session_id: str, index: int):
        session = sessions.get(session_id)
        with session.lock:
            service.mutate_disjointnesses(session, remove=index)
            return {"pending": [render(a) for a in session.pending_disjointnesses]}

    @app.post("/sessions/{session_id}/recompute")
    def recompute(session_id: str, body: dict = Body(default={})):
        session = sessions.get(session_id)
        with session.lock:
            token = CancelToken()
            result = service.recompute(
                session, body.get("method", service.SMALL_MODEL), cancel=token
            )
            return _result_body(
                result, session, body.get("max_classes", service.DEFAULT_LABEL_COUNT)
            )

    @app.post("/sessions/{session_id}/apply")
    def apply(session_id: str, body: dict = Body(...)):
        session = sessions.get(session_id)
        with session.lock:
            what = body["what"]
            service.apply_changes(session, what, index=body.get("index"))
            return {"epoch": session.epoch, "ontology": session.ontology.serialize()}

    @app.post("/sessions/{session_id}/revert")
    def revert(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            service.revert_changes(session)
            return {"epoch": session.epoch, "ontology": session.ontology.serialize()}

    @app.get("/sessions/{session_id}/graph")
    def graph(session_id: str, k: int = service.DEFAULT_LABEL_COUNT, format: str = "json"):
        session = sessions.get(session_id)
        with session.lock:
            doc = service.result_graph(session, k)
        if format == "dot":
            return JSONResponse(content={"dot": graph_to_dot(doc)})
        import json as _json

        return JSONResponse(content=_json.loads(graph_to_json(doc)))

    @app.post("/sessions/{session_id}/cancel")
    def cancel(session_id: str):
        session = sessions.get(session_id)
        # deliberately no lock: the point is to interrupt a running request
        return {"cancelled": service.cancel_current(session)}

    return app
