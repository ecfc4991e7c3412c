"""HTTP service backing the elicitation UI.

Sessions wrap a model; every body uses the model-file interchange encoding
(probabilities as decimal strings). The service never touches a store
except through the same ingest/action paths the library exposes, so CLI
and HTTP mutations leave identical audit trails. Reads are concurrent;
writes within one session are serialized behind a lock, and accepting a
proposal whose basis has moved on returns 409.
"""

from __future__ import annotations

import itertools
import json
import threading
import uuid
from dataclasses import dataclass, field, replace

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .errors import ExpertBnError
from .elicitation import (
    ProbabilityStatement,
    ReplayMismatch,
    check_consistency,
    generate_questionnaire,
)
from .graph import Variable
from .inference import Evidence, MaintenanceAction, Network, apply_maintenance, posterior
from .modelfile import (
    Model,
    action_to_json,
    dumps_model,
    load_model,
    loads_model,
    parse_prob,
    statement_to_json,
    target_from_json,
)
from .reconcile import plan_actions
from .synthesis import synthesize_network
from .wire import (
    consistency_to_json,
    pair_to_json,
    posterior_to_json,
    questionnaire_to_json,
)

__all__ = ["create_app"]


class StaleProposal(ExpertBnError):
    """The store moved on since this proposal was computed."""

    code = "stale_proposal"


@dataclass
class Session:
    id: str
    model: Model
    expert: str | None
    tolerance: float
    lock: threading.Lock = field(default_factory=threading.Lock)
    pending: dict[str, object] = field(default_factory=dict)
    rejected: list[str] = field(default_factory=list)
    proposal_counter: itertools.count = field(default_factory=lambda: itertools.count(1))


def _error(status: int, exc: ExpertBnError | str) -> JSONResponse:
    payload = exc.payload() if isinstance(exc, ExpertBnError) else {
        "code": "bad_request", "message": str(exc)
    }
    return JSONResponse(status_code=status, content={"error": payload})


def _affected_pairs(report, variable: str) -> list[dict]:
    rows = []
    for p in report.pairs:
        if variable in (p.child, p.parent):
            rows.append(pair_to_json(p))
    return rows


def create_app(default_model: Model | None = None) -> FastAPI:
    app = FastAPI(title="expertbn service", docs_url=None, redoc_url=None)
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def get_session(sid: str) -> Session | None:
        with registry_lock:
            return sessions.get(sid)

    def load_body_model(body: dict) -> Model:
        if "model" in body and body["model"] is not None:
            return loads_model(
                body["model"] if isinstance(body["model"], str)
                else json.dumps(body["model"])
            )
        if "model_path" in body and body["model_path"]:
            return load_model(body["model_path"])
        if default_model is not None:
            return loads_model(dumps_model(default_model))
        raise ExpertBnError("request needs a 'model' object or 'model_path'")

    @app.exception_handler(ExpertBnError)
    async def domain_error_handler(request: Request, exc: ExpertBnError):
        return _error(400, exc)

    @app.post("/sessions")
    async def open_session(request: Request):
        body = await request.json()
        model = load_body_model(body)
        tolerance = (
            parse_prob(body["tolerance"]) if "tolerance" in body else model.tolerance
        )
        sid = uuid.uuid4().hex[:12]
        session = Session(
            id=sid,
            model=model,
            expert=body.get("expert"),
            tolerance=tolerance,
        )
        with registry_lock:
            sessions[sid] = session
        return {"session_id": sid, "tolerance": str(tolerance)}

    @app.get("/sessions/{sid}/questions")
    async def next_questions(sid: str):
        session = get_session(sid)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            model = session.model
            q = generate_questionnaire(
                model.dag, model.kept_interactions, model.store
            )
            answered = model.store.active_targets()
            remaining = [x for x in q.questions if x.target not in answered]
            return questionnaire_to_json(type(q)(questions=tuple(remaining)))

    @app.put("/sessions/{sid}/answers")
    async def put_answers(sid: str, request: Request):
        session = get_session(sid)
        if session is None:
            return _error(404, "unknown session")
        body = await request.json()
        answers = body.get("answers")
        if not isinstance(answers, list):
            return _error(400, "body needs an 'answers' list")
        results = []
        with session.lock:
            store = session.model.store
            for entry in answers:
                try:
                    target = target_from_json(entry["target"])
                    source = entry.get("source") or (
                        f"expert:{session.expert}" if session.expert else "expert:anonymous"
                    )
                    stmt = ProbabilityStatement(
                        target=target,
                        value=parse_prob(entry["value"]),
                        source=source,
                        note=entry.get("note"),
                    )
                    stored = store.ingest([stmt])[0]
                except (ExpertBnError, KeyError, TypeError) as exc:
                    results.append(
                        {
                            "target": entry.get("target"),
                            "accepted": False,
                            "error": exc.payload() if isinstance(exc, ExpertBnError)
                            else {"code": "bad_answer", "message": str(exc)},
                        }
                    )
                    continue
                report = check_consistency(store, session.tolerance)
                variable = (
                    target.variable if hasattr(target, "variable") else target.child
                )
                results.append(
                    {
                        "target": statement_to_json(stored)["target"],
                        "accepted": True,
                        "active": stored.is_active(),
                        "pairs": _affected_pairs(report, variable),
                    }
                )
        return {"answers": results}

    @app.get("/sessions/{sid}/consistency")
    async def consistency(sid: str):
        session = get_session(sid)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            report = check_consistency(session.model.store, session.tolerance)
            return consistency_to_json(report)

    @app.post("/sessions/{sid}/reconcile")
    async def reconcile(sid: str, request: Request):
        session = get_session(sid)
        if session is None:
            return _error(404, "unknown session")
        body = await request.json() if await request.body() else {}
        mode = body.get("mode", session.model.metadata.get("reconcile_mode", "strict"))
        with session.lock:
            plan = plan_actions(
                session.model.store,
                tolerance=session.tolerance,
                significance=session.model.significance,
                mode=mode,
            )
            proposals = []
            for action, basis in zip(plan.proposals, plan.bases):
                pid = f"prop{next(session.proposal_counter)}"
                action = replace(action, id=pid)
                session.pending[pid] = (action, basis)
                proposals.append(action_to_json(action))
            return {
                "proposals": proposals,
                "notes": plan.notes,
                "clean_after_all": plan.clean(),
            }

    @app.post("/sessions/{sid}/actions/{aid}/accept")
    async def accept(sid: str, aid: str):
        session = get_session(sid)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            entry = session.pending.get(aid)
            if entry is None:
                return _error(404, f"no pending proposal {aid!r}")
            action, basis = entry
            live = session.model.store.snapshot_values()
            if live != basis:
                changed = sorted(
                    k for k in set(live) | set(basis)
                    if live.get(k) != basis.get(k)
                )
                return _error(409, StaleProposal(
                    f"proposal {aid!r} was computed against values that have "
                    f"since changed: {', '.join(changed[:5])}"
                ))
            final = replace(action, id=session.model.next_action_id())
            try:
                session.model.record_action(final)
            except ReplayMismatch as exc:
                return _error(409, exc)
            del session.pending[aid]
            report = check_consistency(session.model.store, session.tolerance)
            return {
                "applied": action_to_json(final),
                "consistency": consistency_to_json(report),
            }

    @app.post("/sessions/{sid}/actions/{aid}/reject")
    async def reject(sid: str, aid: str):
        session = get_session(sid)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            if aid not in session.pending:
                return _error(404, f"no pending proposal {aid!r}")
            del session.pending[aid]
            session.rejected.append(aid)
            return {"rejected": aid, "pending": sorted(session.pending)}

    @app.get("/sessions/{sid}/model")
    async def session_model(sid: str):
        session = get_session(sid)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            return JSONResponse(content=json.loads(dumps_model(session.model)))

    @app.post("/infer")
    async def infer(request: Request):
        body = await request.json()
        model = load_body_model(body)
        if "query" not in body:
            return _error(400, "body needs 'query'")
        net = _network_for(model)
        evidence = {k: v for k, v in (body.get("evidence") or {}).items()}
        report = posterior(net, body["query"], evidence)
        return posterior_to_json(report)

    @app.post("/whatif")
    async def whatif(request: Request):
        body = await request.json()
        model = load_body_model(body)
        if "target" not in body or "scenarios" not in body:
            return _error(400, "body needs 'target' and 'scenarios'")
        net = _network_for(model)
        evidence = Evidence.of(body.get("evidence") or {})
        base = posterior(net, body["target"], evidence)
        out = {}
        for scenario in body["scenarios"]:
            extended = net
            for raw in scenario.get("actions", []):
                extended = apply_maintenance(extended, _materialize(raw))
            out[scenario["name"]] = posterior_to_json(
                posterior(extended, body["target"], evidence)
            )
        return {"base": posterior_to_json(base), "scenarios": out}

    def _network_for(model: Model) -> Network:
        if model.cpts is None:
            cpts, _ = synthesize_network(
                model.dag,
                model.store,
                kept_interactions=model.kept_interactions,
                tolerance=model.tolerance,
            )
            model.cpts = cpts
        return Network(dag=model.dag, cpts=model.cpts)

    def _materialize(raw: dict) -> MaintenanceAction:
        try:
            task = Variable(
                id=raw["task"]["id"],
                states=tuple(raw["task"]["states"]),
                description=raw["task"].get("description", ""),
            )
            return MaintenanceAction(
                task=task,
                prior={s: parse_prob(v) for s, v in raw["prior"].items()},
                target=raw["target"],
                table={
                    t: {s: parse_prob(v) for s, v in row.items()}
                    for t, row in raw["table"].items()
                },
            )
        except (KeyError, TypeError) as exc:
            raise ExpertBnError(f"malformed maintenance action: {exc}") from exc

    return app
