"""Exact queries on a synthesized network: joints, posteriors, sensitivity
ranking and maintenance what-ifs.

All queries run variable elimination with a min-degree order; the 22-node
application model answers single-variable posteriors in milliseconds, so no
sampling machinery exists here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ExpertBnError
from .factors import Factor, eliminate, min_degree_order
from .graph import Dag, Family, Variable, validate_dag
from .synthesis import Cpt

__all__ = [
    "Network",
    "Evidence",
    "PosteriorReport",
    "SensitivityReport",
    "SensitivityRow",
    "MaintenanceAction",
    "IncompleteAssignment",
    "ZeroEvidenceProbability",
    "AcyclicityViolation",
    "TargetNotRoot",
    "joint_probability",
    "posterior",
    "sensitivity",
    "apply_maintenance",
]


class IncompleteAssignment(ExpertBnError):
    code = "incomplete_assignment"

    def __init__(self, missing: list[str]):
        self.missing = sorted(missing)
        super().__init__("assignment misses variables: " + ", ".join(self.missing))


class ZeroEvidenceProbability(ExpertBnError):
    code = "zero_evidence_probability"

    def __init__(self, evidence: dict[str, str]):
        self.evidence = dict(evidence)
        super().__init__(f"evidence {self.evidence} has probability zero")


class AcyclicityViolation(ExpertBnError):
    code = "acyclicity_violation"


class TargetNotRoot(ExpertBnError):
    code = "target_not_root"

    def __init__(self, target: str, parents):
        self.target = target
        self.parents = list(parents)
        super().__init__(
            f"maintenance targets must be roots; {target!r} already has parents "
            f"{self.parents}"
        )


@dataclass(frozen=True)
class Evidence:
    assignments: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(sorted(self.assignments)))
        vars_ = [v for v, _ in self.assignments]
        if len(vars_) != len(set(vars_)):
            raise ExpertBnError("evidence assigns a variable twice")

    @staticmethod
    def of(mapping: dict[str, str] | None) -> "Evidence":
        return Evidence(tuple((mapping or {}).items()))

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignments)

    def __bool__(self):
        return bool(self.assignments)


@dataclass(frozen=True)
class Network:
    """A Dag plus one synthesized table per variable; immutable, so queries
    are pure and freely concurrent."""

    dag: Dag
    cpts: dict[str, Cpt]

    def __post_init__(self):
        missing = [v for v in self.dag.variable_ids if v not in self.cpts]
        if missing:
            raise ExpertBnError(f"network lacks tables for: {missing}")
        for cpt in self.cpts.values():
            cpt.validate()

    def factors(self) -> list[Factor]:
        return [self.cpts[v].child_factor() for v in self.dag.variable_ids]

    def states(self, vid: str) -> tuple[str, ...]:
        return self.dag.variable(vid).states


@dataclass(frozen=True)
class PosteriorReport:
    variable: str
    distribution: dict[str, float]
    evidence: Evidence
    elimination_order: tuple[str, ...]

    def __post_init__(self):
        total = sum(self.distribution.values())
        assert abs(total - 1.0) <= 1e-9, "posterior must be a distribution"

    def probability(self, state: str) -> float:
        return self.distribution[state]


@dataclass(frozen=True)
class SensitivityRow:
    input: str
    values: dict[str, float]  # state -> P(target = designated | input = state)
    spread: float


@dataclass(frozen=True)
class SensitivityReport:
    target: str
    designated_state: str
    evidence: Evidence
    rows: tuple[SensitivityRow, ...]  # ranked by spread desc, ties by id

    def ranking(self) -> list[str]:
        return [r.input for r in self.rows]


@dataclass(frozen=True)
class MaintenanceAction:
    """A new root task variable wired as the sole parent of one existing
    root (an environment variable), with the table P(env | task)."""

    task: Variable
    prior: dict[str, float]
    target: str
    table: dict[str, dict[str, float]]  # task state -> env state -> prob

    def vacuous_for(self, net: "Network") -> bool:
        env_states = net.states(self.target)
        root_cpt = net.cpts[self.target]
        base = {s: float(v) for s, v in zip(env_states, root_cpt.table)}
        return all(
            abs(self.table[t][s] - base[s]) <= 1e-15
            for t in self.task.states
            for s in env_states
        )


def joint_probability(net: Network, assignment: dict[str, str]) -> float:
    """Probability of one full assignment: the product of table entries."""
    missing = [v for v in net.dag.variable_ids if v not in assignment]
    if missing:
        raise IncompleteAssignment(missing)
    prob = 1.0
    for vid in net.dag.variable_ids:
        cpt = net.cpts[vid]
        row = cpt.row({p: assignment[p] for p in cpt.family.parents})
        prob *= row[assignment[vid]]
    return prob


def _restricted_factors(net: Network, evidence: Evidence) -> list[Factor]:
    ev = evidence.as_dict()
    for v, s in ev.items():
        net.dag.variable(v).state_index(s)  # validates
    factors = []
    for f in net.factors():
        for v, s in ev.items():
            if v in f.scope:
                f = f.restrict(v, net.dag.variable(v).state_index(s))
        factors.append(f)
    return factors


def posterior(
    net: Network,
    query: str,
    evidence: Evidence | dict[str, str] | None = None,
) -> PosteriorReport:
    """Exact posterior of one variable given evidence."""
    if not isinstance(evidence, Evidence):
        evidence = Evidence.of(evidence)
    if query in evidence.as_dict():
        raise ExpertBnError(f"query variable {query!r} is part of the evidence")
    net.dag.variable(query)
    factors = _restricted_factors(net, evidence)
    other = {v for f in factors for v in f.scope} - {query}
    order = min_degree_order([f.scope for f in factors], other)
    result = eliminate(factors, {query}, order=order)
    total = result.total()
    if total <= 0.0:
        raise ZeroEvidenceProbability(evidence.as_dict())
    states = net.states(query)
    dist = {s: float(result.values[i]) / total for i, s in enumerate(states)}
    return PosteriorReport(
        variable=query,
        distribution=dist,
        evidence=evidence,
        elimination_order=tuple(order),
    )


def sensitivity(
    net: Network,
    target: str,
    designated_state: str,
    inputs,
    evidence: Evidence | dict[str, str] | None = None,
) -> SensitivityReport:
    """Spread of the designated-state posterior as each input is observed
    in each of its states, everything else per the shared evidence.

    The metric is deliberately simple and documented: influence = max - min
    of P(target = designated | input = state) across the input's states.
    """
    if not isinstance(evidence, Evidence):
        evidence = Evidence.of(evidence)
    inputs = list(inputs)
    if not inputs:
        raise ExpertBnError("sensitivity needs at least one input variable")
    net.dag.variable(target).state_index(designated_state)
    rows = []
    base_ev = evidence.as_dict()
    for inp in inputs:
        if inp == target or inp in base_ev:
            raise ExpertBnError(f"input {inp!r} clashes with target or evidence")
        values = {}
        for state in net.states(inp):
            ev = dict(base_ev)
            ev[inp] = state
            values[state] = posterior(net, target, ev).probability(designated_state)
        spread = max(values.values()) - min(values.values())
        rows.append(SensitivityRow(input=inp, values=values, spread=spread))
    rows.sort(key=lambda r: (-r.spread, r.input))
    return SensitivityReport(
        target=target,
        designated_state=designated_state,
        evidence=evidence,
        rows=tuple(rows),
    )


def apply_maintenance(net: Network, action: MaintenanceAction) -> Network:
    """Extend the network with a maintenance task variable.

    The task becomes a new root; the target environment variable (which
    must be a root) gains the task as its sole parent with the supplied
    table. Every other table is untouched.
    """
    dag = net.dag
    if dag.has_variable(action.task.id):
        raise AcyclicityViolation(
            f"variable id {action.task.id!r} already exists in the network"
        )
    if not dag.has_variable(action.target):
        raise ExpertBnError(f"unknown maintenance target {action.target!r}")
    if dag.parents(action.target):
        raise TargetNotRoot(action.target, dag.parents(action.target))

    env_states = net.states(action.target)
    for t in action.task.states:
        if t not in action.prior:
            raise ExpertBnError(f"task prior misses state {t!r}")
        row = action.table.get(t)
        if row is None or set(row) != set(env_states):
            raise ExpertBnError(
                f"maintenance table misses a row for task state {t!r}"
            )

    new_vars = list(dag.variables) + [action.task]
    new_edges = set(dag.edges) | {(action.task.id, action.target)}
    # re-validation guards the acyclicity invariant structurally
    try:
        new_dag = validate_dag(new_vars, new_edges)
    except ExpertBnError as exc:
        raise AcyclicityViolation(str(exc)) from exc

    cpts = dict(net.cpts)
    cpts[action.task.id] = Cpt(
        family=Family(child=action.task.id, parents=()),
        states={action.task.id: tuple(action.task.states)},
        table=np.array([action.prior[s] for s in action.task.states]),
        mode="normalized",
        row_mass=np.asarray(sum(action.prior.values())),
    )
    table = np.array(
        [[action.table[t][s] for s in env_states] for t in action.task.states]
    )
    cpts[action.target] = Cpt(
        family=Family(child=action.target, parents=(action.task.id,)),
        states={
            action.target: env_states,
            action.task.id: tuple(action.task.states),
        },
        table=table,
        mode="normalized",
        row_mass=table.sum(axis=-1),
    )
    return Network(dag=new_dag, cpts=cpts)
