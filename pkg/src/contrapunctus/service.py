"""HTTP/JSON query service over the engine.

Contexts are computed on first request and cached in memory under a
deterministic id, so identical GETs return byte-identical bodies. Nothing
is persisted: a restart recomputes the same answers.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .closure import close_involutive, close_iterated, close_single_step
from .counterpoint import (
    ContrapuntalContext,
    SymmetryReport,
    admitted_next_intervals,
    report_entry,
    successors_table,
)
from .errors import ContrapunctusError, InvalidPolarityError, ParseError
from .lattice import SubSet
from .worlds import WORLD_KINDS, parse_morphism, parse_world


@dataclass
class SessionContext:
    """A cached context plus its lazily computed successors table."""

    id: str
    ctx: ContrapuntalContext
    _table: dict[int, SymmetryReport] | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def table(self) -> dict[int, SymmetryReport]:
        with self._lock:
            if self._table is None:
                self._table = successors_table(self.ctx)
            return self._table


class ClosureRequest(BaseModel):
    world: str
    map: str
    set: list[int]
    mode: str = "iterated"


def _context_id(world_id: str, kappa: list[int]) -> str:
    key = f"{world_id}|{','.join(str(i) for i in kappa)}"
    return hashlib.sha256(key.encode()).hexdigest()[:16]


def create_app() -> FastAPI:
    app = FastAPI(title="contrapunctus", version="0.1.0")
    # the composer UI is served from elsewhere (file:// or a static server)
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"])
    contexts: dict[str, SessionContext] = {}
    registry_lock = threading.Lock()

    def _get_session(context_id: str) -> SessionContext:
        session = contexts.get(context_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown context {context_id!r}")
        return session

    @app.get("/worlds")
    def worlds() -> dict:
        return {
            "worlds": [
                {"kind": kind, "spec": spec, "morphisms": grammar, "example": example}
                for kind, spec, grammar, example in WORLD_KINDS
            ]
        }

    @app.get("/contexts")
    def get_context(world: str, kappa: str) -> dict:
        try:
            base = parse_world(world)
            indices = [base.parse_element(tok) for tok in kappa.split(",") if tok != ""]
            ctx = ContrapuntalContext.build(base, indices)
        except InvalidPolarityError as exc:
            raise HTTPException(
                status_code=422,
                detail={"error": str(exc), "witnesses": [str(w) for w in exc.witnesses]},
            ) from None
        except ParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        except ContrapunctusError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        kappa_indices = ctx.dichotomy.K.indices()
        context_id = _context_id(base.id, kappa_indices)
        with registry_lock:
            contexts.setdefault(context_id, SessionContext(context_id, ctx))
        return {
            "id": context_id,
            "world": base.id,
            "kind": base.kind,
            "size": base.carrier.size,
            "kappa": kappa_indices,
            "strong": True,
            "polarity": str(ctx.polarity),
            "intervals": kappa_indices,
            "interval_labels": [base.element_label(i) for i in kappa_indices],
        }

    @app.get("/contexts/{context_id}/successors")
    def successors(context_id: str, interval: str) -> dict:
        session = _get_session(context_id)
        ctx = session.ctx
        try:
            k = ctx.base.parse_element(interval)
        except ParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        table = session.table()
        if k not in table:
            raise HTTPException(
                status_code=400, detail=f"interval {interval!r} is not consonant here"
            )
        entry = report_entry(ctx, k, table[k])
        return {
            "id": session.id,
            "world": ctx.base.id,
            "K": ctx.dichotomy.K.indices(),
            "polarity": str(ctx.polarity),
            **entry,
        }

    @app.get("/contexts/{context_id}/next")
    def next_intervals(context_id: str, interval: str, cantus: str) -> dict:
        session = _get_session(context_id)
        ctx = session.ctx
        try:
            k = ctx.base.parse_element(interval)
            x = ctx.base.parse_element(cantus)
        except ParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        table = session.table()
        if k not in table:
            raise HTTPException(
                status_code=400, detail=f"interval {interval!r} is not consonant here"
            )
        admitted = admitted_next_intervals(ctx, table[k], x)
        return {
            "id": session.id,
            "interval": k,
            "cantus": x,
            "admitted_intervals": admitted.indices(),
        }

    @app.post("/closure")
    def closure(request: ClosureRequest) -> dict:
        try:
            world = parse_world(request.world)
            morphism = parse_morphism(request.map, world)
            subset = SubSet.from_indices(world.carrier, request.set)
            if request.mode == "involutive":
                closed = close_involutive(morphism, subset)
            elif request.mode == "single":
                closed = close_single_step(morphism, subset)
            elif request.mode == "iterated":
                closed = close_iterated(morphism, subset)
            else:
                raise HTTPException(
                    status_code=400, detail=f"unknown closure mode {request.mode!r}"
                )
        except ParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        except ContrapunctusError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        return {
            "world": world.id,
            "map": str(morphism),
            "mode": request.mode,
            "set": subset.indices(),
            "closed": closed.indices(),
        }

    return app
