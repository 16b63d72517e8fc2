"""Session-based HTTP interface for live play against the engine.

Endpoints (all JSON, vertex and set indices 1-based):

- ``POST /games``                   create a session
- ``GET  /games/{id}``              fetch a session
- ``POST /games/{id}/moves``        apply the human's move
- ``POST /games/{id}/engine-move``  ask the engine to reply
- ``GET  /games/{id}/analysis``     outcome, balance quantities, predicate
- ``GET  /games/{id}/hint``         the certified winning move, if any

Errors use ``{"error": {"code": <status>, "message": <text>}}``.

Sessions live in memory behind per-session locks (requests for distinct
sessions proceed concurrently; same-session requests serialize), with
optional JSON snapshots per session id.  The engine never moves on its
own; clients must request each reply.  From a lost position the engine
stalls deterministically: one token off the tallest stack through the
first move set that contains it.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import serialize
from .characterize import closed_form, derived_quantities, is_half_window
from .errors import (
    BudgetExceededError,
    GameParameterError,
    IllegalMoveError,
    SetNimError,
)
from .games import GameSpec, Move, Position, apply_move, as_position, is_terminal
from .oracle import Oracle, default_oracle
from .strategy import winning_move

HUMAN = "human"
ENGINE = "engine"


class ApiError(SetNimError):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass
class GameSession:
    id: str
    spec: GameSpec
    initial: Position
    position: Position
    to_move: str
    history: list[tuple[str, Move]] = field(default_factory=list)
    status: str = "ongoing"
    winner: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "spec": serialize.spec_to_json(self.spec),
            # expanded so clients can highlight regions without any
            # game logic of their own
            "move_sets": [list(ms) for ms in self.spec.move_sets],
            "heights": list(self.position),
            "initial": list(self.initial),
            "to_move": self.to_move,
            "status": self.status,
            "winner": self.winner,
            "history": [
                {"mover": mover, "move": serialize.move_to_json(move)}
                for mover, move in self.history
            ],
        }


def session_from_json(obj: dict) -> GameSession:
    """Rebuild a session from its snapshot, replaying the history."""
    spec = serialize.spec_from_json(obj["spec"])
    initial = as_position(obj["initial"], spec)
    session = GameSession(
        id=obj["id"],
        spec=spec,
        initial=initial,
        position=initial,
        to_move=HUMAN,
    )
    for entry in obj["history"]:
        move = serialize.move_from_json(entry["move"], spec)
        session.position = apply_move(spec, session.position, move)
        session.history.append((entry["mover"], move))
    session.to_move = obj["to_move"]
    session.status = obj["status"]
    session.winner = obj.get("winner")
    if list(session.position) != list(obj["heights"]):
        raise ApiError(500, "snapshot history does not replay to its position")
    return session


class SessionStore:
    def __init__(self, snapshot_dir: str | None = None) -> None:
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        self._snapshot_dir = Path(snapshot_dir) if snapshot_dir else None
        if self._snapshot_dir:
            self._snapshot_dir.mkdir(parents=True, exist_ok=True)

    def add(self, session: GameSession) -> None:
        with self._lock:
            self._sessions[session.id] = session
        self.snapshot(session)

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None and self._snapshot_dir:
            path = self._snapshot_dir / f"{session_id}.json"
            if path.exists():
                session = session_from_json(json.loads(path.read_text()))
                with self._lock:
                    session = self._sessions.setdefault(session_id, session)
        if session is None:
            raise ApiError(404, f"no session {session_id}")
        return session

    def snapshot(self, session: GameSession) -> None:
        if self._snapshot_dir:
            path = self._snapshot_dir / f"{session.id}.json"
            path.write_text(json.dumps(session.to_json()))


def _stalling_move(spec: GameSpec, pos: Position) -> Move:
    """One token off the tallest stack, through the first set holding it.

    Any move loses against perfect play from a lost position; determinism
    keeps tests and replays stable.
    """
    tallest = max(range(1, spec.n + 1), key=lambda v: (pos[v - 1], -v))
    for set_index, ms in enumerate(spec.move_sets, 1):
        if tallest in ms:
            removals = [0] * spec.n
            removals[tallest - 1] = 1
            return Move(set_index, tuple(removals))
    raise ApiError(500, "no move set covers the tallest stack")


def create_app(oracle: Oracle | None = None, snapshot_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="setnim play service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(snapshot_dir)
    orc = oracle or default_oracle()

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.code,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": 400, "message": str(exc.errors())}},
        )

    def _apply(session: GameSession, mover: str, move: Move) -> None:
        session.position = apply_move(session.spec, session.position, move)
        session.history.append((mover, move))
        if is_terminal(session.position):
            session.status = "won"
            session.winner = mover
        else:
            session.to_move = HUMAN if mover == ENGINE else ENGINE
        store.snapshot(session)

    @app.post("/games", status_code=201)
    def create_game(body: dict):
        try:
            spec = serialize.spec_from_json(body.get("spec", {}))
            heights = serialize.position_from_json(body.get("heights"), spec)
        except (GameParameterError, IllegalMoveError) as exc:
            raise ApiError(400, str(exc))
        if is_terminal(heights):
            raise ApiError(400, "initial position is terminal; game is degenerate")
        first = body.get("first", HUMAN)
        if first not in (HUMAN, ENGINE):
            raise ApiError(400, f"first must be '{HUMAN}' or '{ENGINE}'")
        session = GameSession(
            id=uuid.uuid4().hex,
            spec=spec,
            initial=heights,
            position=heights,
            to_move=first,
        )
        store.add(session)
        return session.to_json()

    @app.get("/games/{session_id}")
    def get_game(session_id: str):
        return store.get(session_id).to_json()

    @app.post("/games/{session_id}/moves")
    def human_move(session_id: str, body: dict):
        session = store.get(session_id)
        with session.lock:
            if session.status != "ongoing":
                raise ApiError(409, "game is already over")
            if session.to_move != HUMAN:
                raise ApiError(409, "not the human's turn")
            try:
                move = serialize.move_from_json(body, session.spec)
                _apply(session, HUMAN, move)
            except IllegalMoveError as exc:
                raise ApiError(400, str(exc))
            return session.to_json()

    @app.post("/games/{session_id}/engine-move")
    def engine_move(session_id: str):
        session = store.get(session_id)
        with session.lock:
            if session.status != "ongoing":
                raise ApiError(409, "game is already over")
            if session.to_move != ENGINE:
                raise ApiError(409, "not the engine's turn")
            try:
                certified = winning_move(session.spec, session.position, orc)
            except BudgetExceededError as exc:
                raise ApiError(503, str(exc))
            if certified is None:
                move = _stalling_move(session.spec, session.position)
                note = "no winning move exists"
            else:
                move = certified.move
                note = None
            _apply(session, ENGINE, move)
            payload = {
                "session": session.to_json(),
                "move": serialize.move_to_json(move),
            }
            if note:
                payload["note"] = note
            return payload

    @app.get("/games/{session_id}/analysis")
    def analysis(session_id: str):
        session = store.get(session_id)
        with session.lock:
            spec, pos = session.spec, session.position
            report = closed_form(spec, pos)
            if report is not None:
                outcome = "P" if report.holds else "N"
                source = "closed_form"
            else:
                try:
                    outcome = orc.classify(spec, pos)
                except BudgetExceededError as exc:
                    raise ApiError(503, str(exc))
                source = "oracle"
            payload: dict = {
                "outcome": outcome,
                "source": source,
                "predicate": report.to_json() if report else None,
                "derived": None,
                "SE": None,
                "ME": None,
            }
            if is_half_window(spec):
                dq = derived_quantities(spec, pos)
                payload["derived"] = dq.to_json()
                payload["SE"] = dq.Delta == 0
                payload["ME"] = dq.delta_me == 0
                payload["Delta"] = dq.Delta
                payload["delta"] = dq.delta_me
            return payload

    @app.get("/games/{session_id}/hint")
    def hint(session_id: str):
        session = store.get(session_id)
        with session.lock:
            try:
                certified = winning_move(session.spec, session.position, orc)
            except BudgetExceededError as exc:
                raise ApiError(503, str(exc))
            if certified is None:
                return {"move": None, "result": None, "message": "no winning move"}
            return {
                "move": serialize.move_to_json(certified.move),
                "result": list(certified.result),
                "message": None,
            }

    return app
