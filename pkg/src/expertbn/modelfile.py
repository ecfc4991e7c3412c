"""Model-file persistence: one canonical, hand-editable JSON schema.

The same encoding carries model files, answers files, what-if scenario
files and every HTTP body. Probabilities travel as decimal strings (the
shortest representation that round-trips the underlying double), so saved
files never drift through binary floats. Canonical form is sorted keys,
two-space indentation and a trailing newline; saving the same model twice
yields identical bytes. See docs/FORMAT.md for the full schema.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np
from filelock import FileLock

from .errors import ExpertBnError
from .elicitation import (
    Conditional,
    ElicitationStore,
    Marginal,
    ProbabilityStatement,
    ReconciliationAction,
)
from .graph import Dag, Family, Variable, validate_dag
from .loglinear import InteractionSpec
from .synthesis import Cpt

__all__ = [
    "Model",
    "ModelFormatError",
    "FORMAT_MODEL",
    "FORMAT_ANSWERS",
    "FORMAT_WHATIF",
    "SCHEMA_VERSION",
    "fmt_prob",
    "parse_prob",
    "load_model",
    "loads_model",
    "save_model",
    "dumps_model",
    "parse_answers",
    "parse_whatif",
    "statement_to_json",
    "target_to_json",
    "target_from_json",
    "action_to_json",
    "action_from_json",
]

FORMAT_MODEL = "expertbn-model"
FORMAT_ANSWERS = "expertbn-answers"
FORMAT_WHATIF = "expertbn-whatif"
SCHEMA_VERSION = 1


class ModelFormatError(ExpertBnError):
    code = "model_format"


def fmt_prob(x: float) -> str:
    return repr(float(x))


def parse_prob(s) -> float:
    try:
        v = float(s)
    except (TypeError, ValueError):
        raise ModelFormatError(f"not a decimal probability string: {s!r}") from None
    return v


def _require_keys(obj: dict, required: set[str], optional: set[str], where: str) -> None:
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise ModelFormatError(f"{where}: missing fields {sorted(missing)}")
    if unknown:
        raise ModelFormatError(
            f"{where}: unknown fields {sorted(unknown)}; this tool only reads "
            f"schema version {SCHEMA_VERSION}"
        )


DEFAULT_METADATA = {
    "tolerance": "0.05",
    "significance": "0.02",
    "reconcile_mode": "strict",
    "synthesis_mode": "normalized",
    "count_convention": "paper",
}


@dataclass
class Model:
    """Everything one elicitation project needs, bundled for persistence."""

    dag: Dag
    kept_interactions: frozenset[InteractionSpec] = frozenset()
    store: ElicitationStore = None
    actions: list[ReconciliationAction] = field(default_factory=list)
    cpts: dict[str, Cpt] | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.store is None:
            self.store = ElicitationStore(self.dag, self.kept_interactions)
        md = dict(DEFAULT_METADATA)
        md.update(self.metadata)
        self.metadata = md

    @property
    def tolerance(self) -> float:
        return float(self.metadata["tolerance"])

    @property
    def significance(self) -> float:
        return float(self.metadata["significance"])

    def next_action_id(self) -> str:
        return f"a{len(self.actions) + 1}"

    def record_action(self, action: ReconciliationAction) -> None:
        self.store.apply_action(action)
        self.actions.append(action)


# -- targets, statements, actions ------------------------------------------------

def target_to_json(t) -> dict:
    if isinstance(t, Marginal):
        return {"kind": "marginal", "variable": t.variable, "state": t.state}
    return {
        "kind": "conditional",
        "child": t.child,
        "child_state": t.child_state,
        "given": [[v, s] for v, s in t.given],
    }


def target_from_json(obj: dict):
    kind = obj.get("kind")
    if kind == "marginal":
        _require_keys(obj, {"kind", "variable", "state"}, set(), "target")
        return Marginal(obj["variable"], obj["state"])
    if kind == "conditional":
        _require_keys(obj, {"kind", "child", "child_state", "given"}, set(), "target")
        return Conditional(
            obj["child"], obj["child_state"], tuple((v, s) for v, s in obj["given"])
        )
    raise ModelFormatError(f"unknown target kind {kind!r}")


def statement_to_json(st: ProbabilityStatement) -> dict:
    return {
        "seq": st.seq,
        "target": target_to_json(st.target),
        "value": fmt_prob(st.value),
        "source": st.source,
        "status": st.status,
        "replaced_by": st.replaced_by,
        "note": st.note,
    }


def _statement_from_json(obj: dict) -> ProbabilityStatement:
    _require_keys(
        obj,
        {"seq", "target", "value", "source", "status"},
        {"replaced_by", "note"},
        "statement",
    )
    return ProbabilityStatement(
        target=target_from_json(obj["target"]),
        value=parse_prob(obj["value"]),
        source=obj["source"],
        status=obj["status"],
        replaced_by=obj.get("replaced_by"),
        seq=int(obj["seq"]),
        note=obj.get("note"),
    )


def action_to_json(a: ReconciliationAction) -> dict:
    out = {
        "id": a.id,
        "kind": a.kind,
        "child": a.child,
        "child_state": a.child_state,
        "parent": a.parent,
        "rationale": a.rationale,
        "rule": a.rule,
        "cap_bound": a.cap_bound,
    }
    if a.parent_state is not None:
        out["parent_state"] = a.parent_state
    if a.old_value is not None:
        out["old_value"] = fmt_prob(a.old_value)
    if a.new_value is not None:
        out["new_value"] = fmt_prob(a.new_value)
    if a.scale is not None:
        out["scale"] = fmt_prob(a.scale)
    if a.old_vector is not None:
        out["old_vector"] = {s: fmt_prob(v) for s, v in a.old_vector}
        out["new_vector"] = {s: fmt_prob(v) for s, v in a.new_vector}
    if a.donor_parent is not None:
        out["donor_parent"] = a.donor_parent
    return out


def action_from_json(obj: dict, dag: Dag) -> ReconciliationAction:
    _require_keys(
        obj,
        {"id", "kind", "child", "child_state", "parent", "rationale", "rule", "cap_bound"},
        {"parent_state", "old_value", "new_value", "scale", "old_vector", "new_vector",
         "donor_parent"},
        "action",
    )
    old_vector = new_vector = None
    if "old_vector" in obj:
        states = dag.variable(obj["parent"]).states
        old_vector = tuple((s, parse_prob(obj["old_vector"][s])) for s in states)
        new_vector = tuple((s, parse_prob(obj["new_vector"][s])) for s in states)
    return ReconciliationAction(
        id=obj["id"],
        kind=obj["kind"],
        child=obj["child"],
        child_state=obj["child_state"],
        parent=obj["parent"],
        rationale=obj["rationale"],
        rule=obj["rule"],
        parent_state=obj.get("parent_state"),
        old_value=parse_prob(obj["old_value"]) if "old_value" in obj else None,
        new_value=parse_prob(obj["new_value"]) if "new_value" in obj else None,
        scale=parse_prob(obj["scale"]) if "scale" in obj else None,
        old_vector=old_vector,
        new_vector=new_vector,
        donor_parent=obj.get("donor_parent"),
        cap_bound=bool(obj["cap_bound"]),
    )


# -- CPT section ------------------------------------------------------------------

def _cpts_to_json(cpts: dict[str, Cpt] | None, mode: str) -> dict | None:
    if cpts is None:
        return None
    tables = {}
    for child in sorted(cpts):
        cpt = cpts[child]
        parents = list(cpt.family.parents)
        rows = []
        for combo in itertools.product(*[cpt.states[p] for p in parents]):
            assignment = dict(zip(parents, combo))
            row = cpt.row(assignment)
            idx = tuple(cpt.states[p].index(assignment[p]) for p in parents)
            rows.append(
                {
                    "given": assignment,
                    "p": {s: fmt_prob(v) for s, v in row.items()},
                    "mass": fmt_prob(float(cpt.row_mass[idx])),
                }
            )
        tables[child] = {"parents": parents, "rows": rows}
    return {"mode": mode, "tables": tables}


def _cpts_from_json(obj: dict | None, dag: Dag) -> tuple[dict[str, Cpt] | None, str | None]:
    if obj is None:
        return None, None
    _require_keys(obj, {"mode", "tables"}, set(), "cpts")
    mode = obj["mode"]
    cpts: dict[str, Cpt] = {}
    for child, spec in obj["tables"].items():
        _require_keys(spec, {"parents", "rows"}, set(), f"cpts[{child}]")
        parents = tuple(spec["parents"])
        if parents != dag.parents(child):
            raise ModelFormatError(
                f"cpts[{child}]: parents {list(parents)} do not match the graph"
            )
        cvar = dag.variable(child)
        shape = tuple(dag.variable(p).cardinality for p in parents) + (cvar.cardinality,)
        table = np.zeros(shape)
        mass = np.zeros(shape[:-1])
        for row in spec["rows"]:
            _require_keys(row, {"given", "p", "mass"}, set(), f"cpts[{child}] row")
            idx = tuple(
                dag.variable(p).state_index(row["given"][p]) for p in parents
            )
            table[idx] = [parse_prob(row["p"][s]) for s in cvar.states]
            mass[idx] = parse_prob(row["mass"])
        cpts[child] = Cpt(
            family=Family(child=child, parents=parents),
            states={v: dag.variable(v).states for v in (child, *parents)},
            table=table,
            mode=mode,
            row_mass=mass,
        )
    return cpts, mode


# -- whole model ------------------------------------------------------------------

def dumps_model(model: Model) -> str:
    doc = {
        "format": FORMAT_MODEL,
        "version": SCHEMA_VERSION,
        "variables": [
            {
                "id": v.id,
                "states": list(v.states),
                "description": v.description,
                "group": v.group,
            }
            for v in model.dag.variables
        ],
        "edges": sorted([list(e) for e in model.dag.edges]),
        "kept_interactions": sorted(
            [
                {"child": k.child, "parents": list(k.parent_pair)}
                for k in model.kept_interactions
            ],
            key=lambda d: (d["child"], d["parents"]),
        ),
        "statements": [statement_to_json(st) for st in model.store.statements],
        "actions": [action_to_json(a) for a in model.actions],
        "cpts": _cpts_to_json(model.cpts, model.metadata.get("synthesis_mode", "normalized")),
        "metadata": dict(model.metadata),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads_model(text: str) -> Model:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError("model file must be a JSON object")
    _require_keys(
        doc,
        {"format", "version", "variables", "edges", "statements", "metadata"},
        {"kept_interactions", "actions", "cpts"},
        "model",
    )
    if doc["format"] != FORMAT_MODEL:
        raise ModelFormatError(f"format is {doc['format']!r}, expected {FORMAT_MODEL!r}")
    if doc["version"] != SCHEMA_VERSION:
        raise ModelFormatError(
            f"schema version {doc['version']!r} is not supported; this tool "
            f"reads version {SCHEMA_VERSION}"
        )
    variables = []
    for v in doc["variables"]:
        _require_keys(v, {"id", "states"}, {"description", "group"}, "variable")
        variables.append(
            Variable(
                id=v["id"],
                states=tuple(v["states"]),
                description=v.get("description", ""),
                group=v.get("group"),
            )
        )
    dag = validate_dag(variables, [tuple(e) for e in doc["edges"]])
    kept = frozenset(
        InteractionSpec(child=k["child"], parent_pair=tuple(k["parents"]))
        for k in doc.get("kept_interactions", [])
    )
    for spec in kept:
        spec.validate(dag)
    statements = [_statement_from_json(s) for s in doc["statements"]]
    store = _restore_store(dag, kept, statements)
    actions = [action_from_json(a, dag) for a in doc.get("actions", [])]
    cpts, _ = _cpts_from_json(doc.get("cpts"), dag)
    metadata = doc["metadata"]
    if not all(isinstance(k, str) and isinstance(v, str) for k, v in metadata.items()):
        raise ModelFormatError("metadata must map strings to strings")
    return Model(
        dag=dag,
        kept_interactions=kept,
        store=store,
        actions=actions,
        cpts=cpts,
        metadata=metadata,
    )


def _restore_store(dag, kept, statements) -> ElicitationStore:
    """Rebuild a store exactly as saved, without re-running precedence."""
    store = ElicitationStore(dag, kept)
    max_seq = 0
    for st in statements:
        if st.seq <= 0:
            raise ModelFormatError("statement seq must be positive")
        store._validate_target(st.target)
        if not (0.0 <= st.value <= 1.0):
            raise ModelFormatError(f"statement {st.target.key()} value outside [0, 1]")
        store.statements.append(st)
        if st.is_active():
            if st.target in store._active:
                raise ModelFormatError(
                    f"two active statements for {st.target.key()}"
                )
            store._active[st.target] = st
        max_seq = max(max_seq, st.seq)
    store._next_seq = max_seq + 1
    return store


def save_model(model: Model, path: str) -> None:
    """Canonical save; atomic replace under an advisory lock."""
    text = dumps_model(model)
    lock = FileLock(path + ".lock")
    with lock:
        fd, tmp = tempfile.mkstemp(
            dir=os.path.dirname(os.path.abspath(path)) or ".", suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)


def load_model(path: str) -> Model:
    with open(path, "r") as fh:
        return loads_model(fh.read())


# -- answers and what-if files -----------------------------------------------------

def parse_answers(text: str) -> list[ProbabilityStatement]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from exc
    _require_keys(doc, {"format", "version", "answers"}, set(), "answers file")
    if doc["format"] != FORMAT_ANSWERS:
        raise ModelFormatError(f"format is {doc['format']!r}, expected {FORMAT_ANSWERS!r}")
    if doc["version"] != SCHEMA_VERSION:
        raise ModelFormatError(f"unsupported answers version {doc['version']!r}")
    out = []
    for a in doc["answers"]:
        _require_keys(a, {"target", "value", "source"}, {"note"}, "answer")
        out.append(
            ProbabilityStatement(
                target=target_from_json(a["target"]),
                value=parse_prob(a["value"]),
                source=a["source"],
                note=a.get("note"),
            )
        )
    return out


def parse_whatif(text: str) -> dict:
    """Returns {"target", "designated_state", "evidence", "scenarios"} where
    scenarios is a list of {"name", "actions": [MaintenanceAction-dict]}.
    Action dicts stay as plain data; the CLI materializes them against a
    network so errors surface with scenario context."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from exc
    _require_keys(
        doc,
        {"format", "version", "target", "scenarios"},
        {"designated_state", "evidence"},
        "what-if file",
    )
    if doc["format"] != FORMAT_WHATIF:
        raise ModelFormatError(f"format is {doc['format']!r}, expected {FORMAT_WHATIF!r}")
    if doc["version"] != SCHEMA_VERSION:
        raise ModelFormatError(f"unsupported what-if version {doc['version']!r}")
    for sc in doc["scenarios"]:
        _require_keys(sc, {"name", "actions"}, set(), "scenario")
        for a in sc["actions"]:
            _require_keys(a, {"task", "prior", "target", "table"}, set(), "maintenance action")
            _require_keys(a["task"], {"id", "states"}, {"description"}, "task variable")
    return {
        "target": doc["target"],
        "designated_state": doc.get("designated_state"),
        "evidence": doc.get("evidence", {}),
        "scenarios": doc["scenarios"],
    }
