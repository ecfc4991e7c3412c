"""The deterministic reconciliation cascade.

Order of attack, per round: database precedence is already enforced at
ingestion; then any pair whose stated marginal fails the hull test (child
with two or more parents) triggers a marginal replacement; then the worst
remaining inconsistent pair gets a single-conditional fix at the suggested
state, falling back to the ratio-preserving rescale when the algebraic fix
lands outside [0, 1]. Rounds repeat until the report is clean or nothing
actionable remains. Proposals are computed against a scratch copy of the
store, so they can be reviewed (and individually accepted) before anything
is written.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .elicitation import (
    ConsistencyReport,
    ElicitationStore,
    InfeasibleWarning,
    MissingStatement,
    NoFeasibleCandidate,
    ReconciliationAction,
    check_consistency,
    fix_by_single_conditional,
    replace_marginal,
    rescale_preserving_ratios,
    suggest_target,
)
from .errors import ExpertBnError

__all__ = ["CascadePlan", "plan_actions", "RECONCILE_MODES"]

RECONCILE_MODES = ("strict", "paper")


@dataclass
class CascadePlan:
    proposals: list[ReconciliationAction]
    notes: list[str]
    report_before: ConsistencyReport
    report_after: ConsistencyReport
    # per proposal: every active value at planning time. A proposal is only
    # safe to apply while the live store still matches its basis; anything
    # else is a conflict (the cascade computed it against other numbers).
    bases: list[dict[str, float]] = None

    def clean(self) -> bool:
        return self.report_after.ok()


def plan_actions(
    store: ElicitationStore,
    tolerance: float = 0.05,
    significance: float = 0.02,
    mode: str = "strict",
    skip_pairs: set[tuple[str, str, str]] = frozenset(),
    skip_marginals: set[tuple[str, str]] = frozenset(),
    limit: int | None = None,
) -> CascadePlan:
    """Simulate the cascade and return the ordered action proposals.

    ``skip_pairs`` (child, child_state, parent) and ``skip_marginals``
    (child, child_state) let an interactive caller veto steps; the
    remainder of the plan is recomputed around the veto.
    """
    if mode not in RECONCILE_MODES:
        raise ExpertBnError(f"unknown reconcile mode {mode!r}; use strict or paper")
    work = store.clone()
    report_before = check_consistency(work, tolerance)
    proposals: list[ReconciliationAction] = []
    bases: list[dict[str, float]] = []
    notes: list[str] = []
    tried_marginals = set(skip_marginals)
    handled_pairs = set(skip_pairs)
    counter = itertools.count(1)
    budget = 4 * len(report_before.pairs) + 8

    while budget > 0 and (limit is None or len(proposals) < limit):
        budget -= 1
        report = check_consistency(work, tolerance)

        flagged = [
            p for p in report.worst_first()
            if p.hull_flag
            and len(work.dag.parents(p.child)) >= 2
            and (p.child, p.child_state) not in tried_marginals
        ]
        if flagged:
            pick = flagged[0]
            tried_marginals.add((pick.child, pick.child_state))
            try:
                action = replace_marginal(
                    work, pick.child, pick.child_state,
                    action_id=f"p{next(counter)}",
                )
            except NoFeasibleCandidate as exc:
                notes.append(
                    f"{pick.child}: no recomputed marginal fits every parent "
                    f"hull (candidates {exc.candidates}); left unchanged"
                )
                continue
            except MissingStatement as exc:
                notes.append(f"{pick.child}: {exc}")
                continue
            bases.append(work.snapshot_values())
            work.apply_action(action)
            proposals.append(action)
            continue

        bad = [
            p for p in report.inconsistent_pairs()
            if (p.child, p.child_state, p.parent) not in handled_pairs
            and not p.missing
        ]
        if not bad:
            break
        pick = bad[0]
        handled_pairs.add((pick.child, pick.child_state, pick.parent))
        state, rationale = suggest_target(
            work, pick.child, pick.parent, pick.child_state,
            significance=significance, mode=mode,
        )
        action_id = f"p{next(counter)}"
        out = fix_by_single_conditional(
            work, pick.child, pick.parent, state, pick.child_state,
            action_id=action_id,
        )
        if isinstance(out, InfeasibleWarning):
            notes.append(
                f"P({out.child}={out.child_state}|{out.parent}={out.parent_state}) "
                f"would become {out.raw_value:g}; falling back to the "
                f"ratio-preserving rescale"
            )
            out = rescale_preserving_ratios(
                work, pick.child, pick.parent, pick.child_state,
                action_id=action_id,
            )
            if out.cap_bound:
                notes.append(
                    f"rescale of {pick.child}|{pick.parent} hit the probability "
                    f"cap; residual cannot reach zero, review by hand"
                )
        else:
            out = replace(out, rationale=f"{out.rationale} ({rationale})")
        bases.append(work.snapshot_values())
        work.apply_action(out)
        proposals.append(out)

    return CascadePlan(
        proposals=proposals,
        notes=notes,
        report_before=report_before,
        report_after=check_consistency(work, tolerance),
        bases=bases,
    )
