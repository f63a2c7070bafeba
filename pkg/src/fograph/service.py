"""HTTP JSON API for playing the vertex-marking game against the engine.

Endpoints:
  POST /sessions                {g, h, role, k, alt?} -> {id}
  GET  /sessions/{id}           -> full session state
  POST /sessions/{id}/moves     {side: "G"|"H", vertex: int}
  GET  /sessions/{id}/analysis  -> per-move values at the current position

Sessions live in memory; engine replies are computed synchronously inside
the move request, so infeasible budgets are rejected at creation time.
Status codes: 400 illegal move, 404 unknown session, 409 out of turn,
422 malformed or infeasible session parameters.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import engine
from .graphs import Graph, Graph6Error, graph6_decode, graph6_encode

ROLES = ("Spoiler", "Duplicator")
SIDES = ("G", "H")


class CreateSession(BaseModel):
    g: str
    h: str
    role: str
    k: int
    alt: Optional[int] = None


class MoveRequest(BaseModel):
    side: str
    vertex: int


@dataclass
class Session:
    id: str
    g: Graph
    h: Graph
    role: str                  # the human's role
    k: int
    alt: Optional[int]
    history: list = field(default_factory=list)   # {side, vertex, by}
    position: tuple = ()                          # (g_vertex, h_vertex) pairs
    pending: Optional[tuple] = None               # spoiler move awaiting reply
    status: str = "awaiting-human"
    alt_last: Optional[int] = None                # side of the last spoiler move
    alt_left: int = 0                             # alternations still allowed
    solver: engine.GameSolver = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self):
        if self.alt is not None:
            self.alt_left = self.alt

    @property
    def rounds_done(self) -> int:
        return len(self.position)

    @property
    def alt_state(self) -> Optional[tuple]:
        return (self.alt_last, self.alt_left) if self.alt is not None else None

    def spoiler_side_allowed(self, side: int) -> bool:
        if self.alt is None or self.alt_last is None:
            return True
        return side == self.alt_last or self.alt_left > 0

    def note_spoiler_side(self, side: int):
        if self.alt is not None and self.alt_last is not None \
                and side != self.alt_last:
            self.alt_left -= 1
        self.alt_last = side

    @property
    def remaining(self) -> int:
        return self.k - self.rounds_done

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "g": graph6_encode(self.g),
            "h": graph6_encode(self.h),
            "role": self.role,
            "k": self.k,
            "alt": self.alt,
            "history": self.history,
            "position": [list(p) for p in self.position],
            "pending": list(self.pending) if self.pending else None,
            "status": self.status,
            "round": self.rounds_done,
        }


SESSIONS: dict[str, Session] = {}
_REGISTRY_LOCK = threading.Lock()

app = FastAPI(title="game-service")


def _get(session_id: str) -> Session:
    s = SESSIONS.get(session_id)
    if s is None:
        raise HTTPException(404, "unknown session")
    return s


def _side_index(side: str) -> int:
    if side not in SIDES:
        raise HTTPException(400, "side must be 'G' or 'H'")
    return SIDES.index(side)


def _record(s: Session, side_idx: int, vertex: int, by: str):
    s.history.append({"side": SIDES[side_idx], "vertex": vertex, "by": by})


def _apply_round(s: Session, spoiler: tuple[int, int], reply_vertex: int):
    """Extend the position by a completed round and settle the status."""
    side, v = spoiler
    pair = (v, reply_vertex) if side == 0 else (reply_vertex, v)
    newpos = s.position + (pair,)
    s.position = newpos
    s.pending = None
    if not engine.position_valid(s.g, s.h, newpos):
        s.status = "spoiler-won"
    elif s.rounds_done >= s.k:
        s.status = "duplicator-won"


def _engine_duplicator_reply(s: Session) -> int:
    """Longest-surviving reply to the pending spoiler move."""
    analysis = engine.analyze_moves(s.g, s.h, s.position, s.remaining,
                                    alt=s.alt_state, pending=s.pending,
                                    solver=s.solver)
    best_v, best_val = None, -1
    for w, val in sorted(analysis.duplicator_replies.items()):
        if val > best_val:
            best_v, best_val = w, val
    return best_v


def _engine_spoiler_move(s: Session) -> tuple[int, int]:
    """Fastest forced-win move within the remaining budget, ties broken by
    (side, vertex); an unmarked minimal vertex when no win is forced."""
    analysis = engine.analyze_moves(s.g, s.h, s.position, s.remaining,
                                    alt=s.alt_state, solver=s.solver)
    best, best_val = None, None
    for (side, v), val in sorted(analysis.spoiler_moves.items()):
        if val is not None and (best_val is None or val < best_val):
            best, best_val = (side, v), val
    if best is not None:
        return best
    for side in (0, 1):
        if not s.spoiler_side_allowed(side):
            continue
        graph = s.g if side == 0 else s.h
        marked = {p[side] for p in s.position}
        for v in range(graph.n):
            if v not in marked:
                return (side, v)
    return (0, 0)


def _advance_engine(s: Session):
    """Let the engine move until it is the human's turn or the game ends."""
    while s.status == "awaiting-human":
        if s.role == "Spoiler":
            if s.pending is None:
                return
            reply = _engine_duplicator_reply(s)
            _record(s, 1 - s.pending[0], reply, "engine")
            _apply_round(s, s.pending, reply)
        else:
            if s.pending is not None:
                return
            if s.remaining <= 0:
                return
            move = _engine_spoiler_move(s)
            s.pending = move
            s.note_spoiler_side(move[0])
            _record(s, move[0], move[1], "engine")
            return


@app.post("/sessions", status_code=201)
def create_session(req: CreateSession):
    if req.role not in ROLES:
        raise HTTPException(422, "role must be Spoiler or Duplicator")
    if req.k < 1:
        raise HTTPException(422, "k must be >= 1")
    try:
        g = graph6_decode(req.g)
        h = graph6_decode(req.h)
    except Graph6Error as exc:
        raise HTTPException(422, f"malformed graph: {exc}")
    try:
        engine._check_cap(g, h, req.k)
    except engine.CapExceeded:
        raise HTTPException(422, "engine infeasible at this size")
    s = Session(id=uuid.uuid4().hex, g=g, h=h, role=req.role, k=req.k,
                alt=req.alt, solver=engine.GameSolver(g, h))
    _advance_engine(s)
    with _REGISTRY_LOCK:
        SESSIONS[s.id] = s
    return {"id": s.id}


@app.get("/sessions/{session_id}")
def get_session(session_id: str):
    return _get(session_id).to_json()


@app.post("/sessions/{session_id}/moves")
def post_move(session_id: str, req: MoveRequest):
    s = _get(session_id)
    with s.lock:
        if s.status != "awaiting-human":
            raise HTTPException(409, "session is not awaiting a human move")
        side = _side_index(req.side)
        graph = s.g if side == 0 else s.h
        if not 0 <= req.vertex < graph.n:
            raise HTTPException(400, "unknown vertex")
        if s.role == "Spoiler":
            if s.pending is not None:
                raise HTTPException(409, "reply pending")
            if s.remaining <= 0:
                raise HTTPException(409, "no rounds left")
            if not s.spoiler_side_allowed(side):
                raise HTTPException(400, "alternation budget exhausted")
            s.pending = (side, req.vertex)
            s.note_spoiler_side(side)
            _record(s, side, req.vertex, "human")
        else:
            if s.pending is None:
                raise HTTPException(409, "no spoiler move to answer")
            if side == s.pending[0]:
                raise HTTPException(400, "must reply in the other graph")
            _record(s, side, req.vertex, "human")
            _apply_round(s, s.pending, req.vertex)
        _advance_engine(s)
        return s.to_json()


@app.get("/sessions/{session_id}/analysis")
def get_analysis(session_id: str):
    s = _get(session_id)
    with s.lock:
        if s.status not in ("awaiting-human",) or s.remaining <= 0:
            return {"budget": 0, "hints": []}
        if s.pending is None:
            analysis = engine.analyze_moves(s.g, s.h, s.position, s.remaining,
                                            alt=s.alt_state, solver=s.solver)
            hints = [{"side": SIDES[side], "vertex": v,
                      "value": val}
                     for (side, v), val in sorted(analysis.spoiler_moves.items())]
        else:
            analysis = engine.analyze_moves(s.g, s.h, s.position, s.remaining,
                                            alt=s.alt_state, pending=s.pending,
                                            solver=s.solver)
            other = 1 - s.pending[0]
            hints = [{"side": SIDES[other], "vertex": w, "value": val}
                     for w, val in sorted(analysis.duplicator_replies.items())]
        return {"budget": s.remaining, "pending": list(s.pending) if s.pending
                else None, "hints": hints}
