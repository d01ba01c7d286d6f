"""HTTP+JSON facade over the session store.

Thin by design: every route body is one or two calls into
:class:`~zahlenschlacht.session.SessionStore`, and all domain exceptions
are mapped onto a fixed set of machine-readable error codes.  Payload
shapes are published in ``data/api_schema.json``.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .core import GameConfig, IllegalMove, InvalidConfig
from .registry import load_playable
from .session import (
    MODE_HOT_SEAT,
    MODE_VS_BOT,
    NotYourTurn,
    SessionFinished,
    SessionNotFound,
    SessionStore,
    UnknownVariant,
)

DEFAULT_PORT = 8000
PORT_ENV_VAR = "ZAHLENSCHLACHT_PORT"

# concrete exception class -> (machine code, HTTP status); most specific
# classes only, the handler registration relies on exact types
ERROR_MAP: dict[type[Exception], tuple[str, int]] = {
    InvalidConfig: ("invalid_config", 400),
    UnknownVariant: ("unknown_variant", 400),
    IllegalMove: ("illegal_move", 400),
    NotYourTurn: ("not_your_turn", 409),
    SessionFinished: ("session_finished", 409),
    SessionNotFound: ("session_not_found", 404),
}

# where a source checkout keeps the built browser UI, relative to this file
_REPO_STATIC = Path(__file__).resolve().parents[2] / "frontend" / "dist"


def default_port() -> int:
    raw = os.environ.get(PORT_ENV_VAR)
    return int(raw) if raw else DEFAULT_PORT


class CreateGameBody(BaseModel):
    n: int
    d: int
    mode: str
    seed: int = 0


class MoveBody(BaseModel):
    number: int


def _error_body(code: str, status: int, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "httpStatus": status},
    )


def create_app(
    store: SessionStore | None = None, static_dir: Path | None = None
) -> FastAPI:
    """Build the service around ``store`` (a fresh one by default).

    ``static_dir`` (default: ``frontend/dist`` next to a source checkout)
    is mounted at ``/`` when it exists, so the browser UI and the API can
    share one origin.
    """
    if store is None:
        store = SessionStore()
    app = FastAPI(title="zahlenschlacht", openapi_url=None, docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/variants")
    def variants() -> dict:
        return {
            "vs_bot": [{"n": c.n, "d": c.d} for c in load_playable()],
            "hot_seat": {"min_n": 4, "min_d": 2},
        }

    @app.post("/games", status_code=201)
    def create_game(body: CreateGameBody) -> dict:
        config = GameConfig(body.n, body.d)
        session = store.create(config, body.mode, seed=body.seed)
        return store.view(session.id)

    @app.get("/games/{session_id}")
    def game_view(session_id: str) -> dict:
        return store.view(session_id)

    @app.post("/games/{session_id}/moves")
    def submit_move(session_id: str, body: MoveBody) -> dict:
        events = store.submit_move(session_id, body.number)
        return {"events": events, "view": store.view(session_id)}

    @app.get("/games/{session_id}/events")
    def event_log(session_id: str) -> dict:
        return {"events": store.events(session_id)}

    for exc_type, (code, status) in ERROR_MAP.items():

        def handler(request, exc, code=code, status=status):
            return _error_body(code, status, str(exc))

        app.add_exception_handler(exc_type, handler)

    @app.exception_handler(RequestValidationError)
    def malformed_body(request, exc):
        # malformed request bodies land on the closest domain code
        parts = []
        for err in exc.errors():
            where = ".".join(str(piece) for piece in err.get("loc", ()))
            parts.append(f"{where}: {err.get('msg', 'invalid')}")
        return _error_body("invalid_config", 400, "; ".join(parts) or "malformed request body")

    root = static_dir if static_dir is not None else _REPO_STATIC
    if root.is_dir():
        app.mount("/", StaticFiles(directory=root, html=True), name="ui")

    return app


__all__ = [
    "CreateGameBody",
    "DEFAULT_PORT",
    "ERROR_MAP",
    "MODE_HOT_SEAT",
    "MODE_VS_BOT",
    "MoveBody",
    "PORT_ENV_VAR",
    "create_app",
    "default_port",
]
