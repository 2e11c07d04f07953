"""HTTP curation service: the flag queue, decisions, vocabulary updates,
audit access and workspace statistics over JSON.

Authentication is a single shared token taken from the environment
(KGFORGE_API_TOKEN); when unset the service is open, which is the desk-scale
default. Errors use one body shape: {code, message, details}.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..soundness import Flag, FlagReason, FlagStatus, flag_to_dict
from .store import ConflictError, Decision, DecisionError, FlagStore

TOKEN_ENV = "KGFORGE_API_TOKEN"
TOKEN_HEADER = "x-api-token"


class ApiError(HTTPException):
    def __init__(self, status_code: int, code: str, message: str, details=None) -> None:
        super().__init__(status_code=status_code, detail={
            "code": code, "message": message, "details": details,
        })


class CorrectedTuple(BaseModel):
    property: str
    value: str
    source: str | None = None  # CARD | LLM


class VocabularyAddition(BaseModel):
    scheme: str
    pref_label: str
    language: str = "en"
    alt_labels: list[dict] = Field(default_factory=list)
    note: str | None = None


class DecisionBody(BaseModel):
    action: str
    curator: str
    corrected_tuple: CorrectedTuple | None = None
    vocabulary_addition: VocabularyAddition | None = None
    note: str | None = None


class TermBody(VocabularyAddition):
    pass


def _flag_summary(flag: Flag) -> dict:
    return {
        "id": flag.id,
        "entry_id": flag.entry_id,
        "reason": flag.reason.value,
        "status": flag.status.value,
        "created_at": flag.created_at,
        "detail": flag.detail,
        "tuple_count": len(flag.tuples),
    }


def create_app(workspace, token: str | None = None) -> FastAPI:
    """Build the service over a pipeline workspace. ``workspace`` is a
    :class:`kgforge.pipeline.Workspace`."""
    app = FastAPI(title="kgforge curator", version="0.1.0")
    store = FlagStore(workspace)
    expected_token = token if token is not None else os.environ.get(TOKEN_ENV)

    async def check_token(request: Request) -> None:
        if expected_token and request.headers.get(TOKEN_HEADER) != expected_token:
            raise ApiError(401, "unauthorized", "missing or invalid API token")

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status_code, content=exc.detail)

    @app.get("/api/flags", dependencies=[Depends(check_token)])
    def list_flags(status: str | None = None, reason: str | None = None,
                   page: int = 1, page_size: int = 20):
        if status is not None and status not in {s.value for s in FlagStatus}:
            raise ApiError(400, "bad_filter", f"unknown status {status!r}",
                           {"allowed": sorted(s.value for s in FlagStatus)})
        if reason is not None and reason not in {r.value for r in FlagReason}:
            raise ApiError(400, "bad_filter", f"unknown reason {reason!r}",
                           {"allowed": sorted(r.value for r in FlagReason)})
        if page < 1 or page_size < 1:
            raise ApiError(400, "bad_filter", "page and page_size must be >= 1")
        flags = store.all_flags()
        if status:
            flags = [f for f in flags if f.status.value == status]
        if reason:
            flags = [f for f in flags if f.reason.value == reason]
        start = (page - 1) * page_size
        return {
            "items": [_flag_summary(f) for f in flags[start:start + page_size]],
            "total": len(flags),
            "page": page,
            "page_size": page_size,
        }

    @app.get("/api/flags/{flag_id}", dependencies=[Depends(check_token)])
    def get_flag(flag_id: str):
        flag = store.get(flag_id)
        if flag is None:
            raise ApiError(404, "not_found", f"no flag {flag_id!r}")
        body = flag_to_dict(flag)
        body["recipe_context"] = _recipe_context(workspace, flag.entry_id)
        return body

    @app.post("/api/flags/{flag_id}/decision", dependencies=[Depends(check_token)])
    def submit_decision(flag_id: str, body: DecisionBody):
        decision = Decision(
            flag_id=flag_id,
            action=body.action,
            curator=body.curator,
            corrected_tuple=body.corrected_tuple.model_dump() if body.corrected_tuple else None,
            vocabulary_addition=(
                body.vocabulary_addition.model_dump() if body.vocabulary_addition else None
            ),
            note=body.note,
        )
        try:
            flag, side_effects = store.submit_decision(decision)
        except KeyError:
            raise ApiError(404, "not_found", f"no flag {flag_id!r}")
        except ConflictError as exc:
            raise ApiError(409, "conflict", str(exc))
        except DecisionError as exc:
            raise ApiError(422, "invalid_decision", str(exc))
        except Exception as exc:  # vocabulary invariant violations roll back
            raise ApiError(422, "rejected", str(exc))
        return {"flag": flag_to_dict(flag), "side_effects": side_effects}

    @app.post("/api/vocabulary/terms", dependencies=[Depends(check_token)])
    def add_term(body: TermBody):
        from .store import _term_from_addition, apply_vocabulary_addition

        term = _term_from_addition(body.model_dump(), workspace.base)
        try:
            apply_vocabulary_addition(workspace, term)
        except Exception as exc:
            raise ApiError(422, "rejected", str(exc))
        store.audit.append("vocab_update", {
            "term": term.id.iri,
            "scheme": term.scheme.value,
            "pref_label": term.pref_label.text,
            "alt_labels": [{"text": a.text, "language": a.language} for a in term.alt_labels],
            "content_hash": term.content_hash(),
        })
        return {"term": term.id.iri, "revision": store.vocabulary_revision()}

    @app.get("/api/vocabulary/terms", dependencies=[Depends(check_token)])
    def search_terms(query: str = ""):
        vocab = workspace.vocab()
        if not query:
            return {"items": [], "total": len(vocab)}
        hits = vocab.lookup_term(query)
        items = []
        for concept, kind in hits:
            term = vocab.get(concept)
            items.append({
                "concept": concept.iri,
                "scheme": term.scheme.value,
                "pref_label": term.pref_label.text,
                "match_kind": kind.value,
            })
        return {"items": items, "total": len(items)}

    @app.get("/api/audit", dependencies=[Depends(check_token)])
    def audit(since: int = 0):
        return {"events": store.audit.events(since=since)}

    @app.get("/api/stats", dependencies=[Depends(check_token)])
    def stats():
        body = {
            "flags": store.counts(),
            "vocabulary_revision": store.vocabulary_revision(),
            "graph": None,
        }
        graph_path = workspace.config.path("graph_path")
        if graph_path.exists():
            from ..kgstore import Graph

            graph = Graph.load(graph_path, workspace.base)
            graph_stats = graph.stats()
            graph_stats.serialized_size_bytes = graph_path.stat().st_size
            body["graph"] = graph_stats.to_dict()
        return body

    ui_dir = Path(workspace.root) / "ui"
    if not ui_dir.exists():
        ui_dir = Path(__file__).resolve().parent.parent.parent.parent / "frontend" / "dist"
    if ui_dir.exists():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _recipe_context(workspace, entry_id: str) -> dict:
    """Name and both channels' tuples for the flagged entry, so the curator
    sees the evidence side by side."""
    from ..extract import read_tuples_xml
    from ..soundness import _tuple_to_dict

    context: dict = {"entry_id": entry_id, "card": [], "llm": []}
    resolved_dir = workspace.config.path("resolved_dir")
    for channel in ("card", "llm"):
        path = resolved_dir / f"{entry_id}.{channel}.xml"
        if path.exists():
            ts = read_tuples_xml(path)
            context[channel] = [_tuple_to_dict(t) for t in ts.sorted()]
            for t in ts.tuples:
                if t.property == "name" and isinstance(t.value, str):
                    context.setdefault("recipe_name", t.value)
    return context
