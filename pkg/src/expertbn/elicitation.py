"""Probability elicitation: questionnaires, ingestion with provenance,
consistency checking and rule-driven reconciliation.

The method deliberately over-asks: every variable gets a marginal question
and every child-parent edge gets first-order conditional questions. The
redundancy buys a check, the mixture identity

    P(child) = sum_s P(child | parent=s) * P(parent=s)

which holds separately for every parent of a child. Elicited values never
satisfy it exactly; the reconciliation operations below repair the worst
offenders while keeping an audit trail that can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ExpertBnError
from .graph import Dag, topological_order
from .loglinear import InteractionSpec

__all__ = [
    "Marginal",
    "Conditional",
    "ProbabilityStatement",
    "Question",
    "Questionnaire",
    "PairCheck",
    "ConsistencyReport",
    "ReconciliationAction",
    "InfeasibleWarning",
    "ElicitationStore",
    "OutOfRange",
    "UnknownTarget",
    "MissingStatement",
    "ZeroWeight",
    "DegenerateRatios",
    "NoFeasibleCandidate",
    "ReplayMismatch",
    "SOURCE_DATABASE",
    "expert_source",
    "generate_questionnaire",
    "check_consistency",
    "fix_by_single_conditional",
    "suggest_target",
    "rescale_preserving_ratios",
    "replace_marginal",
]

RARE_EVENT_THRESHOLD = 1e-3
CONDITIONAL_CAP = 1.0 - 1e-9
DEFAULT_TOLERANCE = 0.05
DEFAULT_SIGNIFICANCE = 0.02
_BOUNDARY_EPS = 1e-12


# -- errors ------------------------------------------------------------------

class OutOfRange(ExpertBnError):
    code = "out_of_range"

    def __init__(self, value: float):
        self.value = value
        super().__init__(f"probability {value!r} outside [0, 1]")


class UnknownTarget(ExpertBnError):
    code = "unknown_target"


class MissingStatement(ExpertBnError):
    code = "missing_statement"

    def __init__(self, targets: list[str]):
        self.targets = list(targets)
        super().__init__("missing active statements: " + ", ".join(self.targets))


class ZeroWeight(ExpertBnError):
    code = "zero_weight"

    def __init__(self, parent: str, state: str):
        self.parent = parent
        self.state = state
        super().__init__(f"P({parent}={state}) is zero; cannot solve for that conditional")


class DegenerateRatios(ExpertBnError):
    code = "degenerate_ratios"

    def __init__(self, child: str, parent: str):
        self.child = child
        self.parent = parent
        super().__init__(f"all conditionals of {child} given {parent} are zero")


class NoFeasibleCandidate(ExpertBnError):
    code = "no_feasible_candidate"

    def __init__(self, child: str, candidates: dict[str, float]):
        self.child = child
        self.candidates = dict(candidates)
        super().__init__(
            f"no recomputed marginal for {child} lies inside every other parent's hull"
        )


class ReplayMismatch(ExpertBnError):
    code = "replay_mismatch"


# -- targets and statements ---------------------------------------------------

@dataclass(frozen=True)
class Marginal:
    variable: str
    state: str

    def key(self) -> str:
        return f"P({self.variable}={self.state})"


@dataclass(frozen=True)
class Conditional:
    child: str
    child_state: str
    given: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "given", tuple(sorted(tuple(g) for g in self.given)))

    def key(self) -> str:
        cond = ",".join(f"{v}={s}" for v, s in self.given)
        return f"P({self.child}={self.child_state}|{cond})"


Target = Marginal | Conditional

SOURCE_DATABASE = "database"


def expert_source(expert_id: str) -> str:
    return f"expert:{expert_id}"


def _source_rank(source: str) -> int:
    # feedback data beats opinion when both address the same target
    return 0 if source == SOURCE_DATABASE else 1


@dataclass
class ProbabilityStatement:
    """One elicited value with provenance and audit trail.

    ``seq`` is a logical clock assigned by the store; replaying an action
    log reproduces it exactly, which keeps saved models byte-identical.
    """

    target: Target
    value: float
    source: str
    status: str = "active"          # active | replaced | rejected
    replaced_by: str | None = None  # "stmt:<seq>" or "action:<id>"
    seq: int = 0
    note: str | None = None

    def is_active(self) -> bool:
        return self.status == "active"


# -- questionnaire ------------------------------------------------------------

@dataclass(frozen=True)
class Question:
    target: Target
    prompt: str
    rare_event: bool = False


@dataclass(frozen=True)
class Questionnaire:
    questions: tuple[Question, ...]

    def targets(self) -> list[Target]:
        return [q.target for q in self.questions]


def _describe(dag: Dag, vid: str) -> str:
    d = dag.variable(vid).description
    return d if d else vid


def generate_questionnaire(
    dag: Dag,
    kept_interactions: set[InteractionSpec] | frozenset[InteractionSpec] = frozenset(),
    store: "ElicitationStore | None" = None,
) -> Questionnaire:
    """All questions the method needs, in a reproducible order.

    Per variable (topological order): marginal questions for every
    non-reference state; then, with the variable as child, first-order
    conditional questions per parent (sorted by id), parent state and
    non-reference child state; then second-order questions for kept pairs.

    A question is flagged rare when a marginal it conditions on is already
    known to be below ``RARE_EVENT_THRESHOLD``; such conditionals must be
    asked for the event and its complement alike, never skipped, so the
    flag is rendering advice rather than pruning.
    """
    for spec in kept_interactions:
        spec.validate(dag)
    kept_by_child: dict[str, list[InteractionSpec]] = {}
    for spec in kept_interactions:
        kept_by_child.setdefault(spec.child, []).append(spec)

    def is_rare(vid: str, state: str) -> bool:
        if store is None:
            return False
        value = store.lookup(Marginal(vid, state))
        return value is not None and value < RARE_EVENT_THRESHOLD

    questions: list[Question] = []
    for vid in topological_order(dag):
        var = dag.variable(vid)
        for state in var.states[:-1]:
            questions.append(
                Question(
                    target=Marginal(vid, state),
                    prompt=(
                        f"How probable is it that {_describe(dag, vid)} "
                        f"is in state '{state}'?"
                    ),
                )
            )
        for parent in dag.parents(vid):
            pvar = dag.variable(parent)
            for pstate in pvar.states:
                for cstate in var.states[:-1]:
                    questions.append(
                        Question(
                            target=Conditional(vid, cstate, ((parent, pstate),)),
                            prompt=(
                                f"Given that {_describe(dag, parent)} is '{pstate}', "
                                f"how probable is it that {_describe(dag, vid)} "
                                f"is '{cstate}'?"
                            ),
                            rare_event=any(
                                is_rare(parent, s) for s in pvar.states
                            ),
                        )
                    )
        for spec in sorted(kept_by_child.get(vid, []), key=lambda s: s.parent_pair):
            p1, p2 = spec.parent_pair
            for s1 in dag.variable(p1).states:
                for s2 in dag.variable(p2).states:
                    for cstate in var.states[:-1]:
                        questions.append(
                            Question(
                                target=Conditional(
                                    vid, cstate, ((p1, s1), (p2, s2))
                                ),
                                prompt=(
                                    f"Given that {_describe(dag, p1)} is '{s1}' and "
                                    f"{_describe(dag, p2)} is '{s2}', how probable is "
                                    f"it that {_describe(dag, vid)} is '{cstate}'?"
                                ),
                                rare_event=any(is_rare(p1, s) for s in dag.variable(p1).states)
                                or any(is_rare(p2, s) for s in dag.variable(p2).states),
                            )
                        )
    return Questionnaire(questions=tuple(questions))


# -- the store ----------------------------------------------------------------

class ElicitationStore:
    """Holds every statement ever made, with one active value per target.

    Ingestion precedence: database beats expert for the same target; among
    equal sources the latest wins. Shadowed statements stay in the store
    marked replaced, so the full history is auditable. One store per expert
    is the intended collection workflow; ``merge`` combines them under the
    same precedence for reconciliation.
    """

    def __init__(self, dag: Dag, kept_interactions=frozenset()):
        self.dag = dag
        self.kept_interactions = frozenset(kept_interactions)
        self.statements: list[ProbabilityStatement] = []
        self._active: dict[Target, ProbabilityStatement] = {}
        self._next_seq = 1

    # -- ingestion -----------------------------------------------------------

    def ingest(self, statements) -> list[ProbabilityStatement]:
        """Validate and add statements in order; returns the stored copies."""
        stored = []
        for st in statements:
            stored.append(self._add(st))
        return stored

    def _validate_target(self, target: Target) -> None:
        if isinstance(target, Marginal):
            if not self.dag.has_variable(target.variable):
                raise UnknownTarget(f"unknown variable {target.variable!r}")
            self.dag.variable(target.variable).state_index(target.state)
            return
        if not self.dag.has_variable(target.child):
            raise UnknownTarget(f"unknown variable {target.child!r}")
        child = self.dag.variable(target.child)
        child.state_index(target.child_state)
        parents = set(self.dag.parents(target.child))
        given_vars = [v for v, _ in target.given]
        if len(given_vars) != len(set(given_vars)):
            raise UnknownTarget(f"duplicate conditioning variable in {target.key()}")
        for v, s in target.given:
            if v not in parents:
                raise UnknownTarget(
                    f"{v!r} is not a parent of {target.child!r} in {target.key()}"
                )
            self.dag.variable(v).state_index(s)
        if len(target.given) == 2:
            pair = tuple(sorted(given_vars))
            kept = {
                (spec.child, spec.parent_pair) for spec in self.kept_interactions
            }
            if (target.child, pair) not in kept:
                raise UnknownTarget(
                    f"{target.key()} conditions on a pair that was not retained"
                )
        elif len(target.given) > 2:
            raise UnknownTarget("conditioning on more than two variables is not elicited")

    def _add(self, st: ProbabilityStatement) -> ProbabilityStatement:
        if not (0.0 <= st.value <= 1.0):
            raise OutOfRange(st.value)
        self._validate_target(st.target)
        stored = replace(st, seq=self._next_seq, status="active", replaced_by=None)
        self._next_seq += 1
        current = self._active.get(st.target)
        if current is not None:
            if _source_rank(stored.source) <= _source_rank(current.source):
                current.status = "replaced"
                current.replaced_by = f"stmt:{stored.seq}"
                self._active[st.target] = stored
            else:
                # an expert value arriving after a database value is kept
                # for the record but never becomes active
                stored.status = "replaced"
                stored.replaced_by = f"stmt:{current.seq}"
        else:
            self._active[st.target] = stored
        self.statements.append(stored)
        return stored

    def clone(self) -> "ElicitationStore":
        """Independent copy with identical statements, seqs and statuses."""
        out = ElicitationStore(self.dag, self.kept_interactions)
        for st in self.statements:
            copied = replace(st)
            out.statements.append(copied)
            if copied.is_active():
                out._active[copied.target] = copied
        out._next_seq = self._next_seq
        return out

    @classmethod
    def merge(cls, dag: Dag, stores, kept_interactions=frozenset()) -> "ElicitationStore":
        """Combine per-expert stores; precedence identical to ingestion."""
        merged = cls(dag, kept_interactions)
        for store in stores:
            for st in store.statements:
                if st.is_active():
                    merged.ingest([replace(st, seq=0, status="active", replaced_by=None)])
        return merged

    # -- lookups ---------------------------------------------------------------

    def lookup(self, target: Target) -> float | None:
        st = self._active.get(target)
        return st.value if st is not None else None

    def active_statement(self, target: Target) -> ProbabilityStatement | None:
        return self._active.get(target)

    def active_targets(self) -> set[Target]:
        return set(self._active)

    def marginal_distribution(self, vid: str) -> dict[str, float]:
        """Marginal over all states; the reference (last) state may be
        derived by complement when not elicited directly."""
        var = self.dag.variable(vid)
        values: dict[str, float] = {}
        missing = []
        for state in var.states:
            v = self.lookup(Marginal(vid, state))
            if v is not None:
                values[state] = v
            else:
                missing.append(state)
        if not missing:
            return values
        if len(missing) == 1 and missing[0] == var.states[-1]:
            values[var.states[-1]] = max(0.0, 1.0 - sum(values.values()))
            return values
        raise MissingStatement([Marginal(vid, s).key() for s in missing])

    def conditional_distribution(
        self, child: str, given: tuple[tuple[str, str], ...]
    ) -> dict[str, float]:
        """Distribution over child states given one parent assignment (or a
        kept pair assignment); reference state derived by complement."""
        var = self.dag.variable(child)
        values: dict[str, float] = {}
        missing = []
        for state in var.states:
            v = self.lookup(Conditional(child, state, given))
            if v is not None:
                values[state] = v
            else:
                missing.append(state)
        if not missing:
            return values
        if len(missing) == 1 and missing[0] == var.states[-1]:
            values[var.states[-1]] = max(0.0, 1.0 - sum(values.values()))
            return values
        raise MissingStatement([Conditional(child, s, given).key() for s in missing])

    # -- mutation by reconciliation actions -------------------------------------

    def _supersede(self, target: Target, new_value: float, action_id: str) -> None:
        current = self._active.get(target)
        if current is None:
            raise MissingStatement([target.key()])
        current.status = "replaced"
        current.replaced_by = f"action:{action_id}"
        stored = ProbabilityStatement(
            target=target,
            value=new_value,
            source=current.source,
            seq=self._next_seq,
            note=f"action:{action_id}",
        )
        self._next_seq += 1
        self._active[target] = stored
        self.statements.append(stored)

    def apply_action(self, action: "ReconciliationAction") -> None:
        """Apply one action; used both live and during audit replay."""
        for target, old, new in action.edits():
            current = self.lookup(target)
            if current is None:
                raise ReplayMismatch(f"{target.key()} has no active value to replace")
            if abs(current - old) > 1e-12:
                raise ReplayMismatch(
                    f"{target.key()}: active value {current!r} differs from the "
                    f"action's recorded old value {old!r}"
                )
            if not (0.0 <= new <= 1.0):
                raise OutOfRange(new)
            self._supersede(target, new, action.id)

    def snapshot_values(self) -> dict[str, float]:
        return {t.key(): st.value for t, st in sorted(
            self._active.items(), key=lambda kv: kv[0].key()
        )}


# -- consistency --------------------------------------------------------------

@dataclass(frozen=True)
class PairCheck:
    """Mixture-identity check of one (child, parent) pair for one child state."""

    child: str
    child_state: str
    parent: str
    computed: float | None
    stated: float | None
    residual: float | None
    hull: tuple[float, float] | None
    in_hull: bool | None
    degenerate_boundary: bool | None
    inconsistent: bool
    missing: tuple[str, ...] = ()

    @property
    def hull_flag(self) -> bool:
        """True when the stated marginal cannot be a genuine mixture of the
        conditionals: outside the hull, or pinned to a hull endpoint while
        weight remains on states with different conditionals."""
        if self.in_hull is None:
            return False
        return (not self.in_hull) or bool(self.degenerate_boundary)


@dataclass(frozen=True)
class ConsistencyReport:
    tolerance: float
    pairs: tuple[PairCheck, ...]

    def worst_first(self) -> list[PairCheck]:
        checked = [p for p in self.pairs if p.residual is not None]
        return sorted(
            checked,
            key=lambda p: (-p.residual, p.child, p.parent, p.child_state),
        )

    def inconsistent_pairs(self) -> list[PairCheck]:
        return [p for p in self.worst_first() if p.inconsistent]

    def missing_pairs(self) -> list[PairCheck]:
        return [p for p in self.pairs if p.missing]

    def ok(self) -> bool:
        return not self.inconsistent_pairs()

    def find(self, child: str, parent: str, child_state: str | None = None) -> PairCheck:
        for p in self.pairs:
            if p.child == child and p.parent == parent and (
                child_state is None or p.child_state == child_state
            ):
                return p
        raise KeyError((child, parent, child_state))


def _pair_check(
    store: ElicitationStore,
    child: str,
    child_state: str,
    parent: str,
    tolerance: float,
) -> PairCheck:
    try:
        weights = store.marginal_distribution(parent)
        stated = store.lookup(Marginal(child, child_state))
        missing = [] if stated is not None else [Marginal(child, child_state).key()]
        conds: dict[str, float] = {}
        pvar = store.dag.variable(parent)
        for pstate in pvar.states:
            v = store.lookup(Conditional(child, child_state, ((parent, pstate),)))
            if v is None:
                missing.append(Conditional(child, child_state, ((parent, pstate),)).key())
            else:
                conds[pstate] = v
        if missing:
            raise MissingStatement(missing)
    except MissingStatement as exc:
        return PairCheck(
            child=child, child_state=child_state, parent=parent,
            computed=None, stated=None, residual=None, hull=None,
            in_hull=None, degenerate_boundary=None, inconsistent=False,
            missing=tuple(exc.targets),
        )

    wsum = sum(weights[s] for s in conds)
    if wsum <= 0.0:
        return PairCheck(
            child=child, child_state=child_state, parent=parent,
            computed=None, stated=None, residual=None, hull=None,
            in_hull=None, degenerate_boundary=None, inconsistent=False,
            missing=(f"P({parent}) has zero total mass",),
        )
    # weights are normalized here so the mixture stays a convex combination
    # even when an expert's stated marginals do not sum to one
    computed = sum(conds[s] * weights[s] for s in conds) / wsum
    lo, hi = min(conds.values()), max(conds.values())
    # self-test: a convex combination cannot escape its own hull
    assert lo - 1e-9 <= computed <= hi + 1e-9, "mixture left its hull"
    residual = abs(computed - stated)
    in_hull = lo <= stated <= hi
    degenerate = False
    if in_hull and (abs(stated - lo) <= _BOUNDARY_EPS or abs(stated - hi) <= _BOUNDARY_EPS):
        bound = lo if abs(stated - lo) <= _BOUNDARY_EPS else hi
        off_mass = sum(
            weights[s] for s, c in conds.items() if abs(c - bound) > _BOUNDARY_EPS
        )
        degenerate = off_mass > _BOUNDARY_EPS
    return PairCheck(
        child=child, child_state=child_state, parent=parent,
        computed=computed, stated=stated, residual=residual,
        hull=(lo, hi), in_hull=in_hull, degenerate_boundary=degenerate,
        inconsistent=residual > tolerance,
        missing=(),
    )


def check_consistency(
    store: ElicitationStore,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ConsistencyReport:
    """Mixture-identity check for every (child, parent) edge and every
    non-reference child state. Pairs with missing statements are reported
    as such; the remaining pairs are still checked."""
    dag = store.dag
    pairs: list[PairCheck] = []
    for child in topological_order(dag):
        cvar = dag.variable(child)
        for parent in dag.parents(child):
            for cstate in cvar.states[:-1]:
                pairs.append(_pair_check(store, child, cstate, parent, tolerance))
    return ConsistencyReport(tolerance=tolerance, pairs=tuple(pairs))


# -- reconciliation actions ----------------------------------------------------

@dataclass(frozen=True)
class ReconciliationAction:
    """A rule-driven edit restoring the mixture identity for one pair.

    kinds:
      replace_conditional: recompute one conditional algebraically
      rescale_ratios: scale the whole conditional vector, ratios preserved
      replace_marginal: adopt a recomputed child marginal from a donor parent
    """

    id: str
    kind: str
    child: str
    child_state: str
    parent: str | None
    rationale: str
    rule: str
    parent_state: str | None = None
    old_value: float | None = None
    new_value: float | None = None
    scale: float | None = None
    old_vector: tuple[tuple[str, float], ...] | None = None
    new_vector: tuple[tuple[str, float], ...] | None = None
    donor_parent: str | None = None
    cap_bound: bool = False

    def edits(self) -> list[tuple[Target, float, float]]:
        """(target, old, new) triples this action performs on the store."""
        if self.kind == "replace_conditional":
            t = Conditional(self.child, self.child_state, ((self.parent, self.parent_state),))
            return [(t, self.old_value, self.new_value)]
        if self.kind == "rescale_ratios":
            old = dict(self.old_vector)
            return [
                (Conditional(self.child, self.child_state, ((self.parent, s),)), old[s], v)
                for s, v in self.new_vector
            ]
        if self.kind == "replace_marginal":
            t = Marginal(self.child, self.child_state)
            return [(t, self.old_value, self.new_value)]
        raise ExpertBnError(f"unknown action kind {self.kind!r}")


@dataclass(frozen=True)
class InfeasibleWarning:
    """An algebraic fix left [0, 1]; the raw value is surfaced, nothing is
    stored. This is the anomaly the elicitation rules exist to avoid."""

    child: str
    child_state: str
    parent: str
    parent_state: str
    raw_value: float
    note: str


def _pair_inputs(store, child, child_state, parent):
    weights = store.marginal_distribution(parent)
    stated = store.lookup(Marginal(child, child_state))
    conds = {
        s: store.lookup(Conditional(child, child_state, ((parent, s),)))
        for s in store.dag.variable(parent).states
    }
    missing = [Marginal(child, child_state).key()] if stated is None else []
    missing += [
        Conditional(child, child_state, ((parent, s),)).key()
        for s, v in conds.items() if v is None
    ]
    if missing:
        raise MissingStatement(missing)
    return weights, stated, conds


def _headroom(store, child, child_state, parent, parent_state) -> float:
    """Largest value the (child_state | parent_state) conditional can take
    before the implied reference-state probability goes negative."""
    var = store.dag.variable(child)
    others = 0.0
    for s in var.states[:-1]:
        if s == child_state:
            continue
        v = store.lookup(Conditional(child, s, ((parent, parent_state),)))
        others += v if v is not None else 0.0
    return 1.0 - others


def fix_by_single_conditional(
    store: ElicitationStore,
    child: str,
    parent: str,
    target_state: str,
    child_state: str | None = None,
    action_id: str = "adhoc",
) -> ReconciliationAction | InfeasibleWarning:
    """Solve the mixture identity for one conditional, leaving the rest.

    new = (P(child) - sum_{s != target} P(child|s) P(s)) / P(target).
    A result outside [0, 1] is returned as a warning carrying the raw
    value; it is never stored.
    """
    child_state = child_state or store.dag.variable(child).states[0]
    weights, stated, conds = _pair_inputs(store, child, child_state, parent)
    w = weights[target_state]
    if w == 0.0:
        raise ZeroWeight(parent, target_state)
    rest = sum(conds[s] * weights[s] for s in conds if s != target_state)
    raw = (stated - rest) / w
    headroom = _headroom(store, child, child_state, parent, target_state)
    if not (0.0 <= raw <= min(1.0, headroom)):
        return InfeasibleWarning(
            child=child, child_state=child_state, parent=parent,
            parent_state=target_state, raw_value=raw,
            note=(
                "solving the mixture identity for this state gives a value "
                "outside [0, 1]; pick a heavier state or rescale instead"
            ),
        )
    return ReconciliationAction(
        id=action_id,
        kind="replace_conditional",
        child=child,
        child_state=child_state,
        parent=parent,
        parent_state=target_state,
        old_value=conds[target_state],
        new_value=raw,
        rationale=(
            f"recomputed P({child}={child_state}|{parent}={target_state}) so the "
            f"weighted conditionals reproduce the stated marginal"
        ),
        rule="single-conditional",
    )


def suggest_target(
    store: ElicitationStore,
    child: str,
    parent: str,
    child_state: str | None = None,
    significance: float = DEFAULT_SIGNIFICANCE,
    mode: str = "strict",
) -> tuple[str, str]:
    """Which parent state to recompute: heaviest weight wins, but in strict
    mode only among states whose conditional differs from the stated
    marginal by more than ``significance``. ``mode='paper'`` drops the
    significance filter and always takes the heaviest state. Ties break by
    state order. Returns (state, rationale)."""
    child_state = child_state or store.dag.variable(child).states[0]
    weights, stated, conds = _pair_inputs(store, child, child_state, parent)
    states = list(store.dag.variable(parent).states)
    by_weight = sorted(states, key=lambda s: (-weights[s], states.index(s)))
    if mode == "paper":
        pick = by_weight[0]
        return pick, f"heaviest weight P({parent}={pick})={weights[pick]:g}"
    # zero-weight states are never suggested: the identity cannot be solved
    # for them (that is the low-weight anomaly in the first place)
    qualified = [
        s for s in by_weight
        if weights[s] > 0.0 and abs(conds[s] - stated) > significance
    ]
    if qualified:
        pick = qualified[0]
        return pick, (
            f"heaviest weight among states whose conditional differs from the "
            f"marginal by more than {significance:g}: P({parent}={pick})={weights[pick]:g}, "
            f"|{conds[pick]:g} - {stated:g}| significant"
        )
    positive = [s for s in by_weight if weights[s] > 0.0]
    pick = positive[0] if positive else by_weight[0]
    return pick, (
        f"no conditional differs from the marginal by more than {significance:g}; "
        f"falling back to the heaviest weight P({parent}={pick})={weights[pick]:g}"
    )


def rescale_preserving_ratios(
    store: ElicitationStore,
    child: str,
    parent: str,
    child_state: str | None = None,
    action_id: str = "adhoc",
) -> ReconciliationAction:
    """Scale every conditional of the pair by a common factor so their
    weighted sum meets the stated marginal, preserving mutual ratios.

    With k the elicited conditional vector, the minimizer of
    |P(child) - x * sum_i k_i P(parent=i)| is x* = P(child) / sum_i k_i P(i),
    clamped to keep every k_i * x inside [0, cap] and inside the row's
    headroom. A binding clamp is flagged for human review.
    """
    child_state = child_state or store.dag.variable(child).states[0]
    weights, stated, conds = _pair_inputs(store, child, child_state, parent)
    states = list(store.dag.variable(parent).states)
    k = [conds[s] for s in states]
    denom = sum(ki * weights[s] for ki, s in zip(k, states))
    if all(ki == 0.0 for ki in k):
        raise DegenerateRatios(child, parent)
    upper = min(
        min(CONDITIONAL_CAP, _headroom(store, child, child_state, parent, s)) / ki
        for ki, s in zip(k, states)
        if ki > 0.0
    )
    # zero denominator: every state has zero weight or zero conditional, so
    # the scale has no effect; keep the vector unchanged
    raw = stated / denom if denom > 0.0 else 1.0
    x = min(max(raw, 0.0), upper)
    cap_bound = raw > upper + 1e-15
    new = {s: ki * x for ki, s in zip(k, states)}
    return ReconciliationAction(
        id=action_id,
        kind="rescale_ratios",
        child=child,
        child_state=child_state,
        parent=parent,
        scale=x,
        old_vector=tuple((s, conds[s]) for s in states),
        new_vector=tuple((s, new[s]) for s in states),
        rationale=(
            f"scaled all conditionals of {child} given {parent} by {x:.6g} so their "
            f"weighted sum meets the stated marginal while preserving their ratios"
        ),
        rule="ratio-rescale",
        cap_bound=cap_bound,
    )


def replace_marginal(
    store: ElicitationStore,
    child: str,
    child_state: str | None = None,
    action_id: str = "adhoc",
) -> ReconciliationAction:
    """Adopt a recomputed marginal when the stated one cannot be a genuine
    mixture for some parent.

    Candidates are the per-parent mixture values; the adopted one must lie
    inside the hull of every other parent's conditionals. Requires at least
    two parents and a raised hull flag on at least one of them.
    """
    child_state = child_state or store.dag.variable(child).states[0]
    parents = store.dag.parents(child)
    if len(parents) < 2:
        raise ExpertBnError(
            f"{child} has {len(parents)} parent(s); replacing the marginal needs "
            f"at least two so one can vouch for the other"
        )
    report_rows = {
        p: _pair_check(store, child, child_state, p, tolerance=float("inf"))
        for p in parents
    }
    missing = [t for row in report_rows.values() for t in row.missing]
    if missing:
        raise MissingStatement(missing)
    if not any(row.hull_flag for row in report_rows.values()):
        raise ExpertBnError(
            f"the stated marginal of {child} is attainable for every parent; "
            f"nothing to replace"
        )
    stated = store.lookup(Marginal(child, child_state))
    candidates = {p: report_rows[p].computed for p in parents}
    feasible = []
    for donor in parents:
        ok = all(
            report_rows[other].hull[0] <= candidates[donor] <= report_rows[other].hull[1]
            for other in parents
            if other != donor
        )
        if ok:
            feasible.append(donor)
    if not feasible:
        raise NoFeasibleCandidate(child, candidates)
    donor = feasible[0]
    return ReconciliationAction(
        id=action_id,
        kind="replace_marginal",
        child=child,
        child_state=child_state,
        parent=None,
        old_value=stated,
        new_value=candidates[donor],
        donor_parent=donor,
        rationale=(
            f"stated P({child}={child_state})={stated:g} cannot be a mixture of the "
            f"conditionals for every parent; adopted the value recomputed from "
            f"{donor}, which lies inside the other parents' hulls"
        ),
        rule="marginal-replacement",
    )
