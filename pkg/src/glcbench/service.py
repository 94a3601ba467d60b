"""In-memory session service exposing the interactive refinement loop.

Each session owns an uploaded (and normalized) dataset, an optional active
model, and the active rule list. Every mutation bumps a per-session revision
under a lock; mutating requests must echo the revision they were based on,
and a stale echo is answered with a conflict carrying the current revision.
All numeric payloads use the same canonical encoding as the scene format, so
two reads with no mutation in between are byte-identical.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response

from .dataset import Dataset, load_csv, normalize, read_csv, write_csv
from .errors import GlcError, ValidationError
from .formats import dumps_canonical, dumps_canonical_bytes, loads_canonical
from .linear_model import (
    LinearModel,
    SearchParams,
    normalize_coefficients,
    read_model,
    search_discriminant,
    write_model,
)
from .rules import evaluate_selection, rule_from_obj, rule_to_obj
from .scene import VIEW_KINDS, build_scene, serialize

__all__ = [
    "Session",
    "SessionRegistry",
    "create_app",
    "session_stats",
    "save_session",
    "load_session",
]


@dataclass
class Session:
    id: str
    dataset: Dataset
    view: str = "spc2d"
    model: LinearModel | None = None
    rules: list = field(default_factory=list)
    revision: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionRegistry:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, dataset: Dataset, view: str = "spc2d") -> Session:
        session = Session(id=uuid.uuid4().hex, dataset=dataset, view=view)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

    def delete(self, session_id: str) -> bool:
        with self._lock:
            return self._sessions.pop(session_id, None) is not None


def session_stats(session: Session):
    """Stats of the session's active rule/model state, or None if neither set."""
    if session.model is None and not session.rules:
        return None
    return evaluate_selection(session.dataset, model=session.model,
                              rules=tuple(session.rules))


def _stats_obj(session: Session):
    stats = session_stats(session)
    return None if stats is None else stats.as_obj()


def _canonical(payload, status_code: int = 200) -> Response:
    return Response(
        content=dumps_canonical_bytes(payload),
        media_type="application/json",
        status_code=status_code,
    )


def _error(status_code: int, message: str, **extra) -> Response:
    return _canonical({"error": message, **extra}, status_code=status_code)


def create_app(registry: SessionRegistry | None = None) -> FastAPI:
    registry = registry or SessionRegistry()
    app = FastAPI(title="glcbench service")
    app.state.registry = registry

    def _session_or_error(session_id: str):
        session = registry.get(session_id)
        if session is None:
            return None, _error(404, f"unknown session {session_id!r}")
        return session, None

    @app.post("/sessions")
    async def create_session(request: Request, class_column: str = "class",
                             delimiter: str = ",", view: str = "spc2d"):
        if view not in VIEW_KINDS:
            return _error(422, f"unknown view {view!r}; valid views: {', '.join(VIEW_KINDS)}")
        body = await request.body()
        try:
            dataset = normalize(load_csv(body, class_column=class_column,
                                         delimiter=delimiter))
        except GlcError as exc:
            return _error(422, str(exc))
        session = registry.create(dataset, view=view)
        return _canonical(
            {
                "session_id": session.id,
                "revision": session.revision,
                "attributes": list(dataset.attribute_names),
                "classes": list(dataset.class_labels),
                "cases": len(dataset.cases),
            },
            status_code=201,
        )

    @app.get("/sessions/{session_id}/scene")
    def get_scene(session_id: str, view: str | None = None):
        session, err = _session_or_error(session_id)
        if err:
            return err
        with session.lock:
            try:
                scene = build_scene(
                    session.dataset,
                    view or session.view,
                    model=session.model,
                    rules=tuple(session.rules),
                )
            except GlcError as exc:
                return _error(400, str(exc))
            body = serialize(scene)
            revision = session.revision
        return Response(content=body, media_type="application/json",
                        headers={"X-Revision": str(revision)})

    @app.get("/sessions/{session_id}/stats")
    def get_stats(session_id: str):
        session, err = _session_or_error(session_id)
        if err:
            return err
        with session.lock:
            return _canonical({"revision": session.revision, "stats": _stats_obj(session)})

    @app.put("/sessions/{session_id}/rule")
    async def put_rule(session_id: str, request: Request):
        session, err = _session_or_error(session_id)
        if err:
            return err
        try:
            payload = loads_canonical(await request.body())
        except ValidationError as exc:
            return _error(422, str(exc))
        if not isinstance(payload, dict) or "rule" not in payload:
            return _error(422, "payload must be an object with 'revision' and 'rule'",
                          errors=[{"field": "rule", "message": "missing"}])
        with session.lock:
            if payload.get("revision") != session.revision:
                return _error(409, "revision conflict",
                              current_revision=session.revision)
            try:
                rule = rule_from_obj(payload["rule"])
            except GlcError as exc:
                return _error(422, "invalid rule",
                              errors=[{"field": "rule", "message": str(exc)}])
            session.rules = [rule]
            session.revision += 1
            return _canonical({"revision": session.revision, "stats": _stats_obj(session)})

    @app.put("/sessions/{session_id}/model")
    async def put_model(session_id: str, request: Request):
        session, err = _session_or_error(session_id)
        if err:
            return err
        try:
            payload = loads_canonical(await request.body())
        except ValidationError as exc:
            return _error(422, str(exc))
        if not isinstance(payload, dict):
            return _error(422, "payload must be an object")
        with session.lock:
            if payload.get("revision") != session.revision:
                return _error(409, "revision conflict",
                              current_revision=session.revision)
            try:
                if "search" in payload:
                    spec = payload["search"]
                    if not isinstance(spec, dict) or "target_class" not in spec:
                        raise ValidationError("search payload requires target_class")
                    params = SearchParams(
                        seed=int(spec.get("seed", 0)),
                        restarts=int(spec.get("restarts", SearchParams.restarts)),
                    )
                    model, _ = search_discriminant(session.dataset,
                                                   spec["target_class"], params)
                elif "coefficients" in payload:
                    coeffs = payload["coefficients"]
                    if not isinstance(coeffs, list) or not coeffs:
                        raise ValidationError("coefficients must be a non-empty list")
                    threshold = payload.get("threshold")
                    model = normalize_coefficients(
                        [float(c) for c in coeffs],
                        threshold=None if threshold is None else float(threshold),
                        positive_class=payload.get("positive_class"),
                    )
                elif "threshold" in payload:
                    # threshold-only update: the viewer drags the plane without
                    # ever holding the coefficients
                    if session.model is None:
                        raise ValidationError(
                            "no active model to set a threshold on"
                        )
                    model = session.model.with_threshold(float(payload["threshold"]))
                else:
                    raise ValidationError(
                        "payload must carry 'coefficients', 'threshold', or a "
                        "'search' request"
                    )
            except (GlcError, TypeError, ValueError) as exc:
                return _error(422, "invalid model",
                              errors=[{"field": "model", "message": str(exc)}])
            session.model = model
            session.revision += 1
            return _canonical({
                "revision": session.revision,
                "stats": _stats_obj(session),
                "model": {
                    "raw_coefficients": list(model.raw_coefficients),
                    "normalized_coefficients": list(model.normalized_coefficients),
                    "threshold": model.threshold,
                    "positive_class": model.positive_class,
                },
            })

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        if not registry.delete(session_id):
            return _error(404, f"unknown session {session_id!r}")
        return Response(status_code=204)

    return app


# ---------------------------------------------------------------------------
# Snapshot persistence (dataset, model, rules as the documented text formats)


def save_session(session: Session, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_csv(session.dataset, directory / "dataset.csv")
    meta = {
        "view": session.view,
        "revision": session.revision,
        "normalization": (
            None if session.dataset.normalization is None
            else [list(pair) for pair in session.dataset.normalization]
        ),
        "has_model": session.model is not None,
        "rules": [rule_to_obj(rule) for rule in session.rules],
    }
    (directory / "session.json").write_text(dumps_canonical(meta) + "\n",
                                            encoding="utf-8")
    if session.model is not None:
        write_model(session.model, directory / "model.txt")


def load_session(directory, registry: SessionRegistry) -> Session:
    directory = Path(directory)
    meta = loads_canonical((directory / "session.json").read_text(encoding="utf-8"))
    dataset = read_csv(directory / "dataset.csv")
    if meta["normalization"] is not None:
        dataset = Dataset(
            attribute_names=dataset.attribute_names,
            cases=dataset.cases,
            class_labels=dataset.class_labels,
            normalization=tuple((float(lo), float(hi))
                                for lo, hi in meta["normalization"]),
        )
    session = registry.create(dataset, view=meta["view"])
    if meta["has_model"]:
        session.model = read_model(directory / "model.txt")
    session.rules = [rule_from_obj(obj) for obj in meta["rules"]]
    session.revision = int(meta["revision"])
    return session
