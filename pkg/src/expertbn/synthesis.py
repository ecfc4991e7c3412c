"""Full conditional tables from marginals and first-order conditionals.

Under the order-two reduction, parents are treated as conditionally
independent given their child. Bayes inversion then rebuilds each table row
from elicited values only. For child state s and parent assignment
(a_1..a_n), with one factor per parent block (kept pairs form one block):

    w(s) = prod_blocks P(s | block assignment) / P(s)^(blocks - 1)

``raw`` mode returns w(s) directly; that equals the true conditional only
when the parents are also marginally independent, and can exceed one when
they are not. ``normalized`` mode returns w(s) / sum_s' w(s'), the exact
conditional under the stated assumption, always a valid distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import itertools

import numpy as np

from .errors import ExpertBnError
from .elicitation import ElicitationStore, check_consistency
from .factors import Factor, eliminate
from .graph import Dag, Family, topological_order
from .loglinear import InteractionSpec

__all__ = [
    "Cpt",
    "SynthesisPlan",
    "PlanStep",
    "SynthesisDiagnostics",
    "ZeroMarginal",
    "PlanOrderViolation",
    "InconsistentStore",
    "SYNTHESIS_MODES",
    "synthesize_row",
    "parent_joint",
    "synthesize_network",
]

SYNTHESIS_MODES = ("normalized", "raw")


class ZeroMarginal(ExpertBnError):
    code = "zero_marginal"

    def __init__(self, child: str, state: str):
        self.child = child
        self.state = state
        super().__init__(
            f"P({child}={state}) is zero but appears in a denominator; a zero "
            f"child-marginal state with elicited conditionals signals an "
            f"elicitation error"
        )


class PlanOrderViolation(ExpertBnError):
    code = "plan_order_violation"

    def __init__(self, needed: str):
        self.needed = needed
        super().__init__(f"table for {needed!r} is needed but not yet synthesized")


class InconsistentStore(ExpertBnError):
    code = "inconsistent_store"

    def __init__(self, residual: float, tolerance: float):
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"store fails the consistency check (worst residual {residual:g} > "
            f"tolerance {tolerance:g}); reconcile first or force with "
            f"allow_inconsistent"
        )


@dataclass
class Cpt:
    """One family's conditional table.

    ``table`` has one axis per parent (family order) plus a final child
    axis. ``row_mass`` records the pre-normalization mass of every row;
    in normalized mode each table row sums to one, in raw mode the rows are
    the raw masses themselves (entries clipped into [0, 1] never, they are
    surfaced instead).
    """

    family: Family
    states: dict[str, tuple[str, ...]]
    table: np.ndarray
    mode: str
    row_mass: np.ndarray
    notes: tuple[str, ...] = ()

    def row(self, assignment: dict[str, str]) -> dict[str, float]:
        idx = tuple(
            self.states[p].index(assignment[p]) for p in self.family.parents
        )
        vec = self.table[idx]
        return {s: float(v) for s, v in zip(self.states[self.family.child], vec)}

    def child_factor(self) -> Factor:
        scope = self.family.parents + (self.family.child,)
        return Factor(scope, self.table)

    def validate(self) -> None:
        if self.mode == "normalized":
            sums = self.table.sum(axis=-1)
            if not np.allclose(sums, 1.0, atol=1e-9):
                raise ExpertBnError(
                    f"normalized table for {self.family.child} has rows not "
                    f"summing to one"
                )
        if (self.table < -1e-12).any() or (self.table > 1 + 1e-12).any():
            raise ExpertBnError(
                f"table for {self.family.child} has entries outside [0, 1]"
            )


@dataclass(frozen=True)
class PlanStep:
    child: str
    parents: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]
    required_marginals: tuple[str, ...]
    required_conditionals: tuple[str, ...]


@dataclass(frozen=True)
class SynthesisPlan:
    """Node order and per-node inputs; inputs are always elicited values,
    so any topological order is sound, but the order is kept explicit and
    checked so parent-joint computations can rely on it."""

    order: tuple[str, ...]
    steps: tuple[PlanStep, ...]

    def step(self, child: str) -> PlanStep:
        for s in self.steps:
            if s.child == child:
                return s
        raise KeyError(child)


@dataclass
class SynthesisDiagnostics:
    raw_out_of_range: list[tuple[str, dict[str, str], str, float]] = field(default_factory=list)
    row_mass_deviation: dict[str, float] = field(default_factory=dict)
    implied_marginal_drift: dict[str, float] = field(default_factory=dict)

    def worst_row_mass_deviation(self) -> float:
        return max(self.row_mass_deviation.values(), default=0.0)


def _blocks_for(dag: Dag, child: str, kept: frozenset[InteractionSpec]) -> tuple[tuple[str, ...], ...]:
    """Partition the parent set into kept pairs and singletons."""
    parents = list(dag.parents(child))
    pair_specs = [s for s in kept if s.child == child]
    used: set[str] = set()
    blocks: list[tuple[str, ...]] = []
    for spec in sorted(pair_specs, key=lambda s: s.parent_pair):
        a, b = spec.parent_pair
        if a in used or b in used:
            raise ExpertBnError(
                f"kept pairs for {child} overlap on a parent; the parent set "
                f"cannot be partitioned"
            )
        used.update((a, b))
        blocks.append((a, b))
    for p in parents:
        if p not in used:
            blocks.append((p,))
    return tuple(sorted(blocks))


def _row_weights(
    child: str,
    parent_assignment: dict[str, str],
    store: ElicitationStore,
    kept_interactions: frozenset[InteractionSpec],
) -> dict[str, float]:
    """The raw inversion weights w(s) for one parent assignment."""
    dag = store.dag
    var = dag.variable(child)
    parents = dag.parents(child)
    if set(parent_assignment) != set(parents):
        raise ExpertBnError(
            f"assignment {sorted(parent_assignment)} does not match parents "
            f"{sorted(parents)} of {child}"
        )
    blocks = _blocks_for(dag, child, kept_interactions)
    marginal = store.marginal_distribution(child)
    if not parents:
        return dict(marginal)

    n_blocks = len(blocks)
    w: dict[str, float] = {}
    for s in var.states:
        num = 1.0
        for block in blocks:
            given = tuple(sorted((p, parent_assignment[p]) for p in block))
            num *= store.conditional_distribution(child, given)[s]
        if n_blocks == 1:
            w[s] = num
            continue
        if marginal[s] == 0.0:
            if num == 0.0:
                # no mass can reach this state anyway
                w[s] = 0.0
                continue
            raise ZeroMarginal(child, s)
        w[s] = num / marginal[s] ** (n_blocks - 1)
    return w


def synthesize_row(
    child: str,
    parent_assignment: dict[str, str],
    store: ElicitationStore,
    mode: str = "normalized",
    kept_interactions: frozenset[InteractionSpec] = frozenset(),
    diagnostics: SynthesisDiagnostics | None = None,
) -> dict[str, float]:
    """One table row: the distribution over child states for one full
    parent assignment. See the module docstring for the formula."""
    row, _ = synthesize_row_with_mass(
        child, parent_assignment, store, mode, kept_interactions, diagnostics
    )
    return row


def synthesize_row_with_mass(
    child: str,
    parent_assignment: dict[str, str],
    store: ElicitationStore,
    mode: str = "normalized",
    kept_interactions: frozenset[InteractionSpec] = frozenset(),
    diagnostics: SynthesisDiagnostics | None = None,
) -> tuple[dict[str, float], float]:
    """Row plus its raw pre-normalization mass sum_s w(s); the mass equals
    one exactly when the parent-set joint is the product of the parent
    marginals, so its deviation is the diagnostic for the raw formula."""
    if mode not in SYNTHESIS_MODES:
        raise ExpertBnError(f"unknown synthesis mode {mode!r}")
    var = store.dag.variable(child)
    parents = store.dag.parents(child)
    w = _row_weights(child, parent_assignment, store, kept_interactions)
    mass = sum(w.values())
    if not parents or len(_blocks_for(store.dag, child, kept_interactions)) == 1:
        # identity cases: the row is the elicited distribution, bit for bit
        return w, mass
    if mode == "normalized":
        if mass <= 0.0:
            raise ZeroMarginal(child, "<all>")
        return {s: w[s] / mass for s in var.states}, mass
    # raw mode: surface impossible entries, fall back to normalized for the row
    bad = [s for s in var.states if w[s] > 1.0]
    if bad or mass <= 0.0:
        if diagnostics is not None:
            for s in bad:
                diagnostics.raw_out_of_range.append(
                    (child, dict(parent_assignment), s, w[s])
                )
        if mass <= 0.0:
            raise ZeroMarginal(child, "<all>")
        return {s: w[s] / mass for s in var.states}, mass
    return w, mass


def parent_joint(
    parents,
    dag: Dag,
    cpts: dict[str, Cpt],
    store: ElicitationStore,
) -> Factor:
    """Exact joint over a parent set, eliminating over their ancestors.

    Every ancestor (and every parent) must already have a synthesized
    table; root tables fall back to the elicited marginals. Factorizes
    automatically when the parents share no ancestors.
    """
    parents = tuple(sorted(parents))
    needed = set(parents) | dag.ancestors(parents)
    factors: list[Factor] = []
    for vid in sorted(needed):
        if dag.parents(vid):
            if vid not in cpts:
                raise PlanOrderViolation(vid)
            factors.append(cpts[vid].child_factor())
        else:
            if vid in cpts:
                factors.append(cpts[vid].child_factor())
            else:
                m = store.marginal_distribution(vid)
                states = dag.variable(vid).states
                factors.append(Factor((vid,), np.array([m[s] for s in states])))
    return eliminate(factors, parents)


def build_plan(
    dag: Dag,
    kept_interactions: frozenset[InteractionSpec] = frozenset(),
) -> SynthesisPlan:
    order = tuple(topological_order(dag))
    steps = []
    for child in order:
        parents = dag.parents(child)
        blocks = _blocks_for(dag, child, kept_interactions)
        conds = []
        for block in blocks:
            states_product = itertools.product(
                *[dag.variable(p).states for p in block]
            )
            for combo in states_product:
                given = tuple(sorted(zip(block, combo)))
                for cs in dag.variable(child).states[:-1]:
                    conds.append(f"P({child}={cs}|{','.join(f'{v}={s}' for v, s in given)})")
        steps.append(
            PlanStep(
                child=child,
                parents=parents,
                blocks=blocks,
                required_marginals=(f"P({child})",),
                required_conditionals=tuple(conds),
            )
        )
    return SynthesisPlan(order=order, steps=tuple(steps))


def synthesize_network(
    dag: Dag,
    store: ElicitationStore,
    kept_interactions: frozenset[InteractionSpec] = frozenset(),
    mode: str = "normalized",
    tolerance: float = 0.05,
    allow_inconsistent: bool = False,
    compute_drift: bool = True,
) -> tuple[dict[str, Cpt], SynthesisDiagnostics]:
    """One table per family, in plan order, plus diagnostics.

    The store must pass the consistency check at ``tolerance`` unless
    ``allow_inconsistent`` forces on. Diagnostics report raw-mode
    out-of-range rows, per-node worst row-mass deviation from one, and the
    drift between each variable's elicited marginal and the marginal the
    synthesized network implies for it.
    """
    report = check_consistency(store, tolerance)
    bad = report.inconsistent_pairs()
    if bad and not allow_inconsistent:
        raise InconsistentStore(bad[0].residual, tolerance)

    plan = build_plan(dag, kept_interactions)
    diagnostics = SynthesisDiagnostics()
    cpts: dict[str, Cpt] = {}
    for child in plan.order:
        var = dag.variable(child)
        parents = dag.parents(child)
        parent_states = [dag.variable(p).states for p in parents]
        shape = tuple(len(s) for s in parent_states) + (var.cardinality,)
        table = np.zeros(shape)
        mass = np.zeros(shape[:-1]) if parents else np.zeros(())
        for combo in itertools.product(*[range(len(s)) for s in parent_states]):
            assignment = {
                p: parent_states[i][combo[i]] for i, p in enumerate(parents)
            }
            row, raw_mass = synthesize_row_with_mass(
                child, assignment, store, mode, kept_interactions, diagnostics
            )
            table[combo] = [row[s] for s in var.states]
            mass[combo] = raw_mass
        cpt = Cpt(
            family=dag.family(child),
            states={v: dag.variable(v).states for v in (child, *parents)},
            table=table,
            mode=mode,
            row_mass=mass,
        )
        cpt.validate()
        cpts[child] = cpt
        diagnostics.row_mass_deviation[child] = float(np.abs(mass - 1.0).max())

    if compute_drift:
        all_factors = [c.child_factor() for c in cpts.values()]
        for vid in plan.order:
            f = eliminate(all_factors, {vid})
            total = f.total()
            implied = {
                s: float(f.values[i]) / total
                for i, s in enumerate(dag.variable(vid).states)
            }
            statedm = store.marginal_distribution(vid)
            diagnostics.implied_marginal_drift[vid] = max(
                abs(implied[s] - statedm[s]) for s in implied
            )
    return cpts, diagnostics
