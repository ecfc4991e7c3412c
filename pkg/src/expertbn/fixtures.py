"""Shipped demonstration models.

``application_model`` is a 22-variable degradation model of a coolant pump
sub-component: nine environmental variables drive seven degradation
mechanisms, five observable symptoms and one variable of interest (the
sub-component state). All probabilities are synthetic: a seeded ground
truth network is sampled once, and the shipped statements are its exact
marginals and first-order conditionals, so the store is consistent by
construction and synthesizes without errors. Cardinalities are 17 binary
and 5 ternary; the ternary set {Ab, M4, PI2, PI3, PI6} is one of the nine
assignments for which the classical/reduced parameter totals come out at
381 and 69 with the "paper" counting convention (see the provenance note
in the model metadata).

The two small questionnaire demos carry the worked reconciliation numbers
used across tests: a single three-level parent whose stated child marginal
is inflated, and a two-parent variant whose stated marginal sits on a hull
boundary.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .elicitation import (
    ElicitationStore,
    Marginal,
    Conditional,
    ProbabilityStatement,
    SOURCE_DATABASE,
    expert_source,
)
from .factors import eliminate
from .graph import Dag, Family, Variable, validate_dag
from .modelfile import Model
from .synthesis import Cpt

__all__ = [
    "four_variable_dag",
    "four_variable_model",
    "single_parent_demo_model",
    "two_parent_demo_model",
    "application_dag",
    "application_truth_network",
    "application_model",
    "store_from_network",
    "APPLICATION_TERNARY",
    "APPLICATION_GROUPS",
]


# -- small demos -----------------------------------------------------------------

def four_variable_dag() -> Dag:
    """Diamond: D drives A and B, which jointly drive C. All binary."""
    variables = [
        Variable("A", ("yes", "no"), "first intermediate condition"),
        Variable("B", ("yes", "no"), "second intermediate condition"),
        Variable("C", ("yes", "no"), "outcome of interest"),
        Variable("D", ("yes", "no"), "common driver"),
    ]
    edges = [("D", "A"), ("D", "B"), ("A", "C"), ("B", "C")]
    return validate_dag(variables, edges)


def four_variable_model() -> Model:
    """Diamond dag with consistent statements derived from a ground truth."""
    dag = four_variable_dag()
    truth = _random_truth(dag, seed=41)
    store = store_from_network(truth)
    return Model(dag=dag, store=store, metadata={"provenance": "synthetic demo"})


def single_parent_demo_model() -> Model:
    """A three-level parent A driving a binary C, with the deliberately
    inconsistent values used in the reconciliation walk-through: the stated
    P(C) is far above what the conditionals support."""
    variables = [
        Variable("A", ("0", "1", "2"), "operating regime"),
        Variable("C", ("present", "absent"), "defect presence"),
    ]
    dag = validate_dag(variables, [("A", "C")])
    store = ElicitationStore(dag)
    e = expert_source("panel")
    store.ingest(
        [
            ProbabilityStatement(Marginal("C", "present"), 0.25, e),
            ProbabilityStatement(Conditional("C", "present", (("A", "0"),)), 0.05, e),
            ProbabilityStatement(Conditional("C", "present", (("A", "1"),)), 0.25, e),
            ProbabilityStatement(Conditional("C", "present", (("A", "2"),)), 0.30, e),
            ProbabilityStatement(Marginal("A", "0"), 0.33, e),
            ProbabilityStatement(Marginal("A", "1"), 0.66, e),
            ProbabilityStatement(Marginal("A", "2"), 0.01, e),
        ]
    )
    return Model(dag=dag, store=store, metadata={"provenance": "worked demo"})


def two_parent_demo_model() -> Model:
    """Two parents (A three-level, B binary) with a stated child marginal
    that equals the top of A's conditional hull: only a marginal
    replacement can reconcile it."""
    variables = [
        Variable("A", ("0", "1", "2"), "operating regime"),
        Variable("B", ("0", "1"), "inspection backlog"),
        Variable("C", ("present", "absent"), "defect presence"),
    ]
    dag = validate_dag(variables, [("A", "C"), ("B", "C")])
    store = ElicitationStore(dag)
    e = expert_source("panel")
    store.ingest(
        [
            ProbabilityStatement(Marginal("C", "present"), 0.05, e),
            ProbabilityStatement(Conditional("C", "present", (("A", "0"),)), 0.01, e),
            ProbabilityStatement(Conditional("C", "present", (("A", "1"),)), 0.03, e),
            ProbabilityStatement(Conditional("C", "present", (("A", "2"),)), 0.05, e),
            ProbabilityStatement(Marginal("A", "0"), 0.33, e),
            ProbabilityStatement(Marginal("A", "1"), 0.66, e),
            ProbabilityStatement(Marginal("A", "2"), 0.01, e),
            ProbabilityStatement(Conditional("C", "present", (("B", "0"),)), 0.10, e),
            ProbabilityStatement(Conditional("C", "present", (("B", "1"),)), 0.03, e),
            ProbabilityStatement(Marginal("B", "0"), 0.10, e),
            ProbabilityStatement(Marginal("B", "1"), 0.90, e),
        ]
    )
    return Model(dag=dag, store=store, metadata={"provenance": "worked demo"})


# -- the application model ----------------------------------------------------------

APPLICATION_TERNARY = ("Ab", "M4", "PI2", "PI3", "PI6")

APPLICATION_GROUPS = {
    "environment": ("Ab", "Ad", "Ag", "DI", "DJ", "PI2", "PI3", "PI4", "PI6"),
    "degradation": ("M1p", "M1pp", "M2", "M3", "M4", "M5", "M6"),
    "observation": ("O1", "O2", "O2p", "O2pp", "O5"),
    "interest": ("E",),
}

_APPLICATION_PARENTS = {
    "M1p": ("Ag", "DJ"),
    "M1pp": ("DJ", "PI2"),
    "M2": ("Ag", "PI3"),
    "M3": ("Ad", "PI3"),
    "M4": ("Ab", "PI4", "PI6"),
    "M5": ("DI", "PI3"),
    "M6": ("Ad", "Ab"),
    "O1": ("M1pp", "M4", "M5", "M6"),
    "O5": ("M3", "M4", "M5", "M6"),
    "O2": ("M5",),
    "O2pp": ("M2", "M3", "M4", "M6", "O2"),
    "O2p": ("M1p", "M1pp", "M2", "M3", "M4", "M6", "O2pp"),
    "E": ("O1", "O5", "O2p"),
}

_APPLICATION_DESCRIPTIONS = {
    "Ab": "abrasive particle content of the coolant",
    "Ad": "adhesive wear conditions at the shaft seal",
    "Ag": "aggressive water chemistry episodes",
    "DI": "injection line configuration",
    "DJ": "joint and gasket design generation",
    "PI2": "pressure fluctuation regime",
    "PI3": "thermal cycling intensity",
    "PI4": "vibration exposure level",
    "PI6": "duty-cycle load profile",
    "M1p": "seal face wear, primary path",
    "M1pp": "seal face wear, secondary path",
    "M2": "impeller surface erosion",
    "M3": "corrosion pitting",
    "M4": "fretting damage",
    "M5": "bearing degradation",
    "M6": "shaft misalignment wear",
    "O1": "vibration alarm signature",
    "O2": "temperature anomaly",
    "O2p": "leak rate trend anomaly",
    "O2pp": "acoustic emission anomaly",
    "O5": "coolant particle count anomaly",
    "E": "sub-component state",
}

_TERNARY_STATES = {
    "Ab": ("high", "medium", "low"),
    "PI2": ("high", "medium", "low"),
    "PI3": ("high", "medium", "low"),
    "PI6": ("high", "medium", "low"),
    "M4": ("severe", "moderate", "none"),
}

_PROVENANCE = (
    "Synthetic demonstration data: a seeded ground-truth network was sampled "
    "once and the statements below are its exact marginals and first-order "
    "conditionals, so the store is consistent by construction. Variables Ab, "
    "M4, PI2, PI3, PI6 carry three states, the other seventeen two; this "
    "assignment is one of the nine for which the classical/reduced parameter "
    "totals equal 381/69 under the 'paper' counting convention, with the "
    "O2p table alone needing 192 classical values against 7 retained "
    "conditionals."
)


def _binary_states(vid: str) -> tuple[str, str]:
    if vid in APPLICATION_GROUPS["environment"]:
        return ("adverse", "normal")
    if vid in APPLICATION_GROUPS["degradation"]:
        return ("present", "absent")
    if vid in APPLICATION_GROUPS["observation"]:
        return ("anomalous", "normal")
    return ("degraded", "sound")


@lru_cache(maxsize=1)
def application_dag() -> Dag:
    def group_of(vid: str) -> str:
        for g, members in APPLICATION_GROUPS.items():
            if vid in members:
                return g
        raise KeyError(vid)

    variables = []
    for group, members in APPLICATION_GROUPS.items():
        for vid in members:
            states = _TERNARY_STATES.get(vid) or _binary_states(vid)
            variables.append(
                Variable(
                    id=vid,
                    states=states,
                    description=_APPLICATION_DESCRIPTIONS[vid],
                    group=group_of(vid),
                )
            )
    edges = [
        (p, c) for c, parents in _APPLICATION_PARENTS.items() for p in parents
    ]
    return validate_dag(variables, edges)


def _random_truth(dag: Dag, seed: int):
    """A ground-truth network with rows bounded away from zero, so every
    derived marginal and conditional is well-behaved."""
    from .inference import Network  # deferred: inference imports synthesis

    rng = np.random.default_rng(seed)
    cpts = {}
    for child in dag.variable_ids:
        var = dag.variable(child)
        parents = dag.parents(child)
        shape = tuple(dag.variable(p).cardinality for p in parents) + (var.cardinality,)
        raw = rng.gamma(2.0, 1.0, size=shape) + 0.15
        table = raw / raw.sum(axis=-1, keepdims=True)
        cpts[child] = Cpt(
            family=Family(child=child, parents=parents),
            states={v: dag.variable(v).states for v in (child, *parents)},
            table=table,
            mode="normalized",
            row_mass=np.ones(shape[:-1]),
        )
    return Network(dag=dag, cpts=cpts)


def store_from_network(
    net,
    marginal_source: str = SOURCE_DATABASE,
    conditional_source: str = expert_source("panel"),
) -> ElicitationStore:
    """Exact marginals and first-order conditionals of a known network,
    packaged as an elicitation store. Values come from variable
    elimination, so the store satisfies the mixture identity exactly."""
    dag = net.dag
    factors = net.factors()
    statements = []
    marginals = {}
    for vid in dag.variable_ids:
        f = eliminate(factors, {vid})
        dist = f.values / f.total()
        marginals[vid] = dist
        for i, state in enumerate(dag.variable(vid).states[:-1]):
            statements.append(
                ProbabilityStatement(
                    Marginal(vid, state), float(dist[i]), marginal_source
                )
            )
    for child in dag.variable_ids:
        cvar = dag.variable(child)
        for parent in dag.parents(child):
            pvar = dag.variable(parent)
            pair = eliminate(factors, {child, parent})
            pair = pair.transpose((child, parent))
            joint = pair.values / pair.values.sum()
            for j, pstate in enumerate(pvar.states):
                col = joint[:, j]
                denom = col.sum()
                for i, cstate in enumerate(cvar.states[:-1]):
                    statements.append(
                        ProbabilityStatement(
                            Conditional(child, cstate, ((parent, pstate),)),
                            float(col[i] / denom),
                            conditional_source,
                        )
                    )
    store = ElicitationStore(dag)
    store.ingest(statements)
    return store


@lru_cache(maxsize=1)
def application_truth_network():
    return _random_truth(application_dag(), seed=2003)


@lru_cache(maxsize=1)
def _application_statement_args() -> tuple:
    store = store_from_network(application_truth_network())
    return tuple(
        (st.target, st.value, st.source) for st in store.statements
    )


def application_model() -> Model:
    """A fresh, mutable model each call; the expensive exact-probability
    derivation is cached behind it."""
    dag = application_dag()
    store = ElicitationStore(dag)
    store.ingest(
        ProbabilityStatement(target, value, source)
        for target, value, source in _application_statement_args()
    )
    return Model(
        dag=dag,
        store=store,
        metadata={"provenance": _PROVENANCE},
    )
