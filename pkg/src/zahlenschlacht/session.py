"""Playable sessions: turn order, move events, and the bot opponent.

A session wraps one board.  In ``vs_bot`` mode the human owns the first
player and the punishing bot answers each move synchronously; such games
are restricted to the catalogued winnable variants.  ``hot_seat`` accepts
any configuration and both seats submit through the same call.

Every removal becomes an event ``{seq, actor, number, residue, ts}``; a
store can mirror events to a JSONL file for later replay.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from .core import (
    PLAYER_A,
    PLAYER_B,
    BoardState,
    GameConfig,
    GameError,
    InvalidConfig,
    superfluous_numbers,
)
from .registry import is_playable
from .strategy_b import BotProfile, punisher_move

MODE_VS_BOT = "vs_bot"
MODE_HOT_SEAT = "hot_seat"
MODES = (MODE_VS_BOT, MODE_HOT_SEAT)

STATUS_LIVE = "live"
STATUS_FINISHED = "finished"


class SessionError(GameError):
    pass


class SessionNotFound(SessionError):
    pass


class SessionFinished(SessionError):
    pass


class NotYourTurn(SessionError):
    pass


class UnknownVariant(SessionError):
    """Bot games only run on catalogued first-player-winnable variants."""


@dataclass
class Session:
    id: str
    config: GameConfig
    mode: str
    board: BoardState
    bot: BotProfile | None
    events: list[dict] = field(default_factory=list)
    status: str = STATUS_LIVE
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionStore:
    """All live sessions of one process; safe for concurrent use."""

    def __init__(self, log_path: str | Path | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._log_path = Path(log_path) if log_path is not None else None
        self._log_lock = threading.Lock()

    def create(self, config: GameConfig, mode: str, seed: int = 0) -> Session:
        if mode not in MODES:
            raise InvalidConfig(f"mode must be one of {MODES}, got {mode!r}")
        bot = None
        if mode == MODE_VS_BOT:
            if not is_playable(config):
                raise UnknownVariant(
                    f"Z({config.n}, {config.d}) is not in the playable catalogue"
                )
            bot = BotProfile(seed=seed)
        session = Session(
            id=secrets.token_urlsafe(12),
            config=config,
            mode=mode,
            board=BoardState.initial(config),
            bot=bot,
        )
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionNotFound(f"no session {session_id!r}")
        return session

    def ids(self) -> list[str]:
        with self._lock:
            return list(self._sessions)

    def submit_move(self, session_id: str, number: int) -> list[dict]:
        """Apply one human removal; returns the new events (bot reply included)."""
        session = self.get(session_id)
        with session.lock:
            if session.status != STATUS_LIVE:
                raise SessionFinished(f"session {session.id} is over")
            if session.mode == MODE_VS_BOT and session.board.to_move != PLAYER_A:
                raise NotYourTurn("the bot is to move")
            events = [self._apply(session, number)]
            if (
                session.status == STATUS_LIVE
                and session.mode == MODE_VS_BOT
                and session.board.to_move == PLAYER_B
            ):
                reply = punisher_move(session.board, session.bot)
                events.append(self._apply(session, reply))
            return events

    def view(self, session_id: str) -> dict:
        session = self.get(session_id)
        with session.lock:
            return self._view_locked(session)

    def events(self, session_id: str) -> list[dict]:
        session = self.get(session_id)
        with session.lock:
            return list(session.events)

    def _apply(self, session: Session, number: int) -> dict:
        actor = session.board.to_move
        session.board = session.board.remove(number)
        event = {
            "seq": len(session.events) + 1,
            "actor": actor,
            "number": number,
            "residue": number % session.config.d,
            "ts": time.time(),
        }
        session.events.append(event)
        if session.board.is_over():
            session.status = STATUS_FINISHED
        self._log(event)
        return event

    def _log(self, event: dict) -> None:
        if self._log_path is None:
            return
        line = json.dumps(event, separators=(", ", ": "))
        with self._log_lock:
            with self._log_path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def _view_locked(self, session: Session) -> dict:
        board = session.board
        d = session.config.d
        outcome = board.outcome()
        return {
            "id": session.id,
            "config": {"n": session.config.n, "d": d},
            "mode": session.mode,
            "live": sorted(board.live),
            "residues": {str(a): a % d for a in sorted(board.live)},
            "crossed": [
                {"number": number, "actor": actor} for actor, number in board.removed
            ],
            "superfluous": sorted(superfluous_numbers(board)),
            "to_move": None if session.status == STATUS_FINISHED else board.to_move,
            "status": session.status,
            "winner": outcome.winner if outcome else None,
            "final_pair": sorted(outcome.final_pair) if outcome else None,
        }
