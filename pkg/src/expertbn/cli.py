"""Command-line workflow over model files.

Every command is a thin shell over the library operations: identical
inputs through the CLI and direct calls give identical outputs. Exit
codes: 0 success, 1 domain failure (graph invalid, inconsistent store,
query error), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .errors import ExpertBnError
from . import fixtures
from .elicitation import check_consistency, generate_questionnaire
from .graph import Variable
from .inference import Evidence, MaintenanceAction, Network, apply_maintenance, posterior, sensitivity
from .loglinear import COUNT_CONVENTIONS, bn_to_loglinear, check_representable, count_parameters, reduce_to_order_two
from .modelfile import (
    Model,
    fmt_prob,
    load_model,
    parse_answers,
    parse_prob,
    parse_whatif,
    save_model,
)
from .reconcile import RECONCILE_MODES, plan_actions
from .synthesis import SYNTHESIS_MODES, synthesize_network
from .wire import (
    consistency_to_json,
    counts_to_json,
    diagnostics_to_json,
    posterior_to_json,
    questionnaire_to_json,
    sensitivity_to_json,
)

FIXTURES = {
    "application": fixtures.application_model,
    "diamond": fixtures.four_variable_model,
    "single-parent-demo": fixtures.single_parent_demo_model,
    "two-parent-demo": fixtures.two_parent_demo_model,
}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _parse_evidence(text: str | None) -> dict[str, str]:
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise ExpertBnError(f"evidence needs VAR=state, got {part!r}")
        var, state = part.split("=", 1)
        out[var.strip()] = state.strip()
    return out


def _network(model: Model) -> Network:
    if model.cpts is None:
        raise ExpertBnError(
            "model has no synthesized tables; run `expertbn synthesize` first"
        )
    return Network(dag=model.dag, cpts=model.cpts)


def _out_path(args, default: str) -> str:
    return args.out if getattr(args, "out", None) else default


# -- commands ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    model = load_model(args.model)
    loglin = bn_to_loglinear(model.dag)
    reduced, repair_log = reduce_to_order_two(model.dag, model.kept_interactions)
    family_violations = check_representable(loglin)
    print(f"variables: {len(model.dag.variable_ids)}  edges: {len(model.dag.edges)}")
    print(f"family model: {loglin.notation()}")
    print(f"reduced model: {reduced.notation()}")
    if repair_log:
        print("third-order terms forced by representability repair:")
        for s in repair_log:
            print("  " + "{" + ",".join(sorted(s)) + "}")
    if family_violations:
        print("family model violations (unexpected):")
        for s in family_violations:
            print("  " + "{" + ",".join(sorted(s)) + "}")
        return 1
    print("structure ok")
    return 0


def cmd_questions(args) -> int:
    model = load_model(args.model)
    q = generate_questionnaire(model.dag, model.kept_interactions, model.store)
    if args.expert:
        answered = {
            st.target
            for st in model.store.statements
            if st.source == f"expert:{args.expert}"
        }
        q = type(q)(questions=tuple(x for x in q.questions if x.target not in answered))
    if args.format == "json":
        print(_dump(questionnaire_to_json(q)))
    else:
        for i, question in enumerate(q.questions, 1):
            flag = "  [rare event: ask both the event and its complement]" if question.rare_event else ""
            print(f"{i:3d}. {question.prompt}{flag}")
            print(f"      target: {question.target.key()}")
    return 0


def cmd_ingest(args) -> int:
    model = load_model(args.model)
    answers = parse_answers(open(args.answers).read())
    stored = model.store.ingest(answers)
    shadowed = [st for st in stored if not st.is_active()]
    save_model(model, _out_path(args, args.model))
    print(f"ingested {len(stored)} statements ({len(shadowed)} shadowed on arrival)")
    return 0


def cmd_check(args) -> int:
    model = load_model(args.model)
    tolerance = args.tolerance if args.tolerance is not None else model.tolerance
    report = check_consistency(model.store, tolerance)
    if args.report_dir:
        from .reports import write_consistency_report

        for path in write_consistency_report(report, args.report_dir):
            print(f"wrote {path}", file=sys.stderr)
    if args.format == "json":
        print(_dump(consistency_to_json(report)))
    else:
        for p in report.worst_first():
            mark = "FAIL" if p.inconsistent else "ok  "
            print(
                f"{mark} P({p.child}={p.child_state}) vs {p.parent}: "
                f"computed {fmt_prob(p.computed)} stated {fmt_prob(p.stated)} "
                f"residual {fmt_prob(p.residual)}"
                + ("  [hull flag]" if p.hull_flag else "")
            )
        for p in report.missing_pairs():
            print(f"MISSING {p.child}|{p.parent}: " + "; ".join(p.missing))
    return 0 if report.ok() else 1


def cmd_reconcile(args) -> int:
    model = load_model(args.model)
    tolerance = args.tolerance if args.tolerance is not None else model.tolerance
    significance = (
        args.significance if args.significance is not None else model.significance
    )
    skip_pairs: set[tuple[str, str, str]] = set()
    skip_marginals: set[tuple[str, str]] = set()
    applied = 0
    while True:
        plan = plan_actions(
            model.store,
            tolerance=tolerance,
            significance=significance,
            mode=args.mode,
            skip_pairs=skip_pairs,
            skip_marginals=skip_marginals,
            limit=1 if args.interactive else None,
        )
        for note in plan.notes:
            print(f"note: {note}")
        if not plan.proposals:
            break
        if args.interactive:
            action = plan.proposals[0]
            print(f"proposed: {action.rationale}")
            for target, old, new in action.edits():
                print(f"  {target.key()}: {fmt_prob(old)} -> {fmt_prob(new)}")
            answer = input("apply? [y/n/q] ").strip().lower()
            if answer == "q":
                break
            if answer != "y":
                if action.kind == "replace_marginal":
                    skip_marginals.add((action.child, action.child_state))
                else:
                    skip_pairs.add((action.child, action.child_state, action.parent))
                continue
            model.record_action(replace(action, id=model.next_action_id()))
            applied += 1
        else:
            for action in plan.proposals:
                final = replace(action, id=model.next_action_id())
                model.record_action(final)
                print(f"applied {final.id} [{final.rule}]: {final.rationale}")
                applied += 1
            break
    save_model(model, _out_path(args, args.model))
    report = check_consistency(model.store, tolerance)
    print(
        f"{applied} action(s) applied; "
        f"{len(report.inconsistent_pairs())} inconsistent pair(s) remain"
    )
    return 0 if report.ok() else 1


def cmd_counts(args) -> int:
    model = load_model(args.model)
    counts = count_parameters(model.dag, convention=args.convention)
    if args.report_dir:
        from .reports import write_counts_report

        for path in write_counts_report(counts, args.report_dir):
            print(f"wrote {path}", file=sys.stderr)
    if args.format == "json":
        print(_dump(counts_to_json(counts)))
        return 0
    print(f"convention: {counts.convention} ({counts.convention_note})")
    print(f"{'variable':<10} {'classical':>9} {'marg':>5} {'cond':>5} {'reduced':>8}")
    for n in counts.nodes:
        print(
            f"{n.variable:<10} {n.classical:>9} {n.reduced_marginals:>5} "
            f"{n.reduced_conditionals:>5} {n.reduced_total:>8}"
        )
    print(
        f"{'TOTAL':<10} {counts.classical_total:>9} "
        f"{'':>5} {'':>5} {counts.reduced_total:>8}"
    )
    return 0


def cmd_synthesize(args) -> int:
    model = load_model(args.model)
    cpts, diag = synthesize_network(
        model.dag,
        model.store,
        kept_interactions=model.kept_interactions,
        mode=args.mode,
        tolerance=model.tolerance,
        allow_inconsistent=args.allow_inconsistent,
    )
    model.cpts = cpts
    model.metadata["synthesis_mode"] = args.mode
    save_model(model, _out_path(args, args.model))
    print(f"synthesized {len(cpts)} tables in {args.mode} mode")
    print(_dump(diagnostics_to_json(diag)))
    return 0


def cmd_infer(args) -> int:
    model = load_model(args.model)
    net = _network(model)
    report = posterior(net, args.query, _parse_evidence(args.evidence))
    if args.format == "json":
        print(_dump(posterior_to_json(report)))
    else:
        ev = report.evidence.as_dict()
        suffix = f" given {ev}" if ev else ""
        print(f"P({report.variable}){suffix}:")
        for s, v in report.distribution.items():
            print(f"  {s:<12} {fmt_prob(v)}")
    return 0


def cmd_sensitivity(args) -> int:
    model = load_model(args.model)
    net = _network(model)
    inputs = (
        [v.strip() for v in args.inputs.split(",")]
        if args.inputs
        else [v for v in net.dag.variable_ids if not net.dag.parents(v)]
    )
    state = args.state or net.states(args.target)[0]
    report = sensitivity(
        net, args.target, state, inputs, _parse_evidence(args.evidence)
    )
    if args.report_dir:
        from .reports import write_sensitivity_report

        for path in write_sensitivity_report(report, args.report_dir):
            print(f"wrote {path}", file=sys.stderr)
    if args.format == "json":
        print(_dump(sensitivity_to_json(report)))
    else:
        print(f"influence on P({report.target}={report.designated_state}):")
        for r in report.rows:
            vals = "  ".join(f"{s}:{fmt_prob(v)}" for s, v in r.values.items())
            print(f"  {r.input:<8} spread {fmt_prob(r.spread)}   {vals}")
    return 0


def _materialize_action(obj: dict) -> MaintenanceAction:
    task = Variable(
        id=obj["task"]["id"],
        states=tuple(obj["task"]["states"]),
        description=obj["task"].get("description", ""),
    )
    return MaintenanceAction(
        task=task,
        prior={s: parse_prob(v) for s, v in obj["prior"].items()},
        target=obj["target"],
        table={
            t: {s: parse_prob(v) for s, v in row.items()}
            for t, row in obj["table"].items()
        },
    )


def cmd_whatif(args) -> int:
    model = load_model(args.model)
    net = _network(model)
    spec = parse_whatif(open(args.actions).read())
    evidence = Evidence.of(spec["evidence"])
    target = spec["target"]
    base = posterior(net, target, evidence)
    results = []
    for scenario in spec["scenarios"]:
        extended = net
        for action_obj in scenario["actions"]:
            extended = apply_maintenance(extended, _materialize_action(action_obj))
        results.append((scenario["name"], posterior(extended, target, evidence)))
    if args.report_dir:
        from .reports import write_whatif_report

        for path in write_whatif_report(base, results, args.report_dir):
            print(f"wrote {path}", file=sys.stderr)
    if args.format == "json":
        print(
            _dump(
                {
                    "base": posterior_to_json(base),
                    "scenarios": {
                        name: posterior_to_json(rep) for name, rep in results
                    },
                }
            )
        )
    else:
        states = list(base.distribution)
        header = "  ".join(f"{s:>12}" for s in states)
        print(f"{'scenario':<16}{header}")
        print(
            f"{'base':<16}"
            + "  ".join(f"{base.distribution[s]:>12.6f}" for s in states)
        )
        for name, rep in results:
            print(
                f"{name:<16}"
                + "  ".join(f"{rep.distribution[s]:>12.6f}" for s in states)
            )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    model = load_model(args.model)
    host, _, port = args.listen.rpartition(":")
    app = create_app(default_model=model)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def cmd_fixture(args) -> int:
    model = FIXTURES[args.name]()
    save_model(model, args.out)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expertbn",
        description=(
            "Build, check and query low-complexity belief networks from "
            "expert-elicited probabilities."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, report_dir=False, fmt=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        if report_dir:
            p.add_argument("--report-dir", help="write CSV + PNG reports here")
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = add("validate", cmd_validate, "validate structure and representability", fmt=False)
    p.add_argument("model")

    p = add("questions", cmd_questions, "render the questionnaire")
    p.add_argument("model")
    p.add_argument("--expert", help="hide questions this expert already answered")

    p = add("ingest", cmd_ingest, "ingest an answers file", fmt=False)
    p.add_argument("model")
    p.add_argument("answers")
    p.add_argument("--out", help="write the updated model here instead of in place")

    p = add("check", cmd_check, "mixture-identity consistency report", report_dir=True)
    p.add_argument("model")
    p.add_argument("--tolerance", type=float)

    p = add("reconcile", cmd_reconcile, "apply the rule cascade", fmt=False)
    p.add_argument("model")
    p.add_argument("--mode", choices=RECONCILE_MODES, default="strict")
    p.add_argument("--interactive", action="store_true")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--significance", type=float)
    p.add_argument("--out", help="write the updated model here instead of in place")

    p = add("counts", cmd_counts, "classical vs reduced parameter counts", report_dir=True)
    p.add_argument("model")
    p.add_argument("--convention", choices=COUNT_CONVENTIONS, default="paper")

    p = add("synthesize", cmd_synthesize, "build full conditional tables", fmt=False)
    p.add_argument("model")
    p.add_argument("--mode", choices=SYNTHESIS_MODES, default="normalized")
    p.add_argument("--allow-inconsistent", action="store_true")
    p.add_argument("--out", help="write the updated model here instead of in place")

    p = add("infer", cmd_infer, "posterior query")
    p.add_argument("model")
    p.add_argument("--query", required=True)
    p.add_argument("--evidence", help="comma-separated VAR=state pairs")

    p = add("sensitivity", cmd_sensitivity, "input influence ranking", report_dir=True)
    p.add_argument("model")
    p.add_argument("--target", required=True)
    p.add_argument("--state", help="designated target state (default: first)")
    p.add_argument("--inputs", help="comma-separated inputs (default: all roots)")
    p.add_argument("--evidence", help="comma-separated VAR=state pairs")

    p = add("whatif", cmd_whatif, "evaluate maintenance scenarios", report_dir=True)
    p.add_argument("model")
    p.add_argument("actions")

    p = add("serve", cmd_serve, "run the HTTP service", fmt=False)
    p.add_argument("model")
    p.add_argument("--listen", default="127.0.0.1:8235")

    p = add("fixture", cmd_fixture, "write a bundled demonstration model", fmt=False)
    p.add_argument("name", choices=sorted(FIXTURES))
    p.add_argument("-o", "--out", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ExpertBnError as exc:
        print(json.dumps({"error": exc.payload()}, indent=2, sort_keys=True),
              file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(json.dumps({"error": {"code": "file_not_found", "message": str(exc)}},
                         indent=2, sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
