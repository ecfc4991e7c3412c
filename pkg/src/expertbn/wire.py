"""JSON projections of report objects, shared by the CLI and the HTTP
service so both surfaces emit identical bytes for identical inputs.
Probabilities become decimal strings, like everywhere else on the wire.
"""

from __future__ import annotations

from .elicitation import ConsistencyReport, PairCheck, Question, Questionnaire
from .inference import PosteriorReport, SensitivityReport
from .loglinear import ParameterCounts
from .modelfile import fmt_prob, target_to_json
from .synthesis import SynthesisDiagnostics

__all__ = [
    "pair_to_json",
    "consistency_to_json",
    "questionnaire_to_json",
    "posterior_to_json",
    "sensitivity_to_json",
    "counts_to_json",
    "diagnostics_to_json",
]


def _opt(x) -> str | None:
    return None if x is None else fmt_prob(x)


def pair_to_json(p: PairCheck) -> dict:
    return {
        "child": p.child,
        "child_state": p.child_state,
        "parent": p.parent,
        "computed": _opt(p.computed),
        "stated": _opt(p.stated),
        "residual": _opt(p.residual),
        "hull": [fmt_prob(p.hull[0]), fmt_prob(p.hull[1])] if p.hull else None,
        "in_hull": p.in_hull,
        "degenerate_boundary": p.degenerate_boundary,
        "hull_flag": p.hull_flag,
        "inconsistent": p.inconsistent,
        "missing": list(p.missing),
    }


def consistency_to_json(report: ConsistencyReport) -> dict:
    return {
        "tolerance": fmt_prob(report.tolerance),
        "ok": report.ok(),
        "pairs": [pair_to_json(p) for p in report.worst_first()],
        "missing": [pair_to_json(p) for p in report.missing_pairs()],
    }


def _question_to_json(q: Question) -> dict:
    return {
        "target": target_to_json(q.target),
        "prompt": q.prompt,
        "rare_event": q.rare_event,
    }


def questionnaire_to_json(q: Questionnaire) -> dict:
    return {"questions": [_question_to_json(x) for x in q.questions]}


def posterior_to_json(report: PosteriorReport) -> dict:
    return {
        "variable": report.variable,
        "distribution": {s: fmt_prob(v) for s, v in report.distribution.items()},
        "evidence": dict(report.evidence.assignments),
        "elimination_order": list(report.elimination_order),
    }


def sensitivity_to_json(report: SensitivityReport) -> dict:
    return {
        "target": report.target,
        "designated_state": report.designated_state,
        "evidence": dict(report.evidence.assignments),
        "rows": [
            {
                "input": r.input,
                "spread": fmt_prob(r.spread),
                "values": {s: fmt_prob(v) for s, v in r.values.items()},
            }
            for r in report.rows
        ],
    }


def counts_to_json(counts: ParameterCounts) -> dict:
    return {
        "convention": counts.convention,
        "convention_note": counts.convention_note,
        "classical_total": counts.classical_total,
        "reduced_total": counts.reduced_total,
        "nodes": [
            {
                "variable": n.variable,
                "classical": n.classical,
                "reduced_marginals": n.reduced_marginals,
                "reduced_conditionals": n.reduced_conditionals,
                "reduced_total": n.reduced_total,
            }
            for n in counts.nodes
        ],
    }


def diagnostics_to_json(diag: SynthesisDiagnostics) -> dict:
    return {
        "raw_out_of_range": [
            {"child": c, "assignment": a, "state": s, "value": fmt_prob(v)}
            for c, a, s, v in diag.raw_out_of_range
        ],
        "row_mass_deviation": {
            k: fmt_prob(v) for k, v in sorted(diag.row_mass_deviation.items())
        },
        "implied_marginal_drift": {
            k: fmt_prob(v) for k, v in sorted(diag.implied_marginal_drift.items())
        },
    }
