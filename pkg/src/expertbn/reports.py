"""Report rendering: delimited files plus matplotlib figures.

Every reporting command can write its table as CSV and a companion PNG
into a report directory; the figure and the delimited file always carry
the same numbers. Figures use the Agg backend so rendering works headless.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .elicitation import ConsistencyReport
from .inference import PosteriorReport, SensitivityReport
from .loglinear import ParameterCounts

__all__ = [
    "write_consistency_report",
    "write_counts_report",
    "write_sensitivity_report",
    "write_whatif_report",
]


def _ensure(outdir: str) -> str:
    os.makedirs(outdir, exist_ok=True)
    return outdir


def _save(fig, outdir: str, name: str) -> str:
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def write_consistency_report(report: ConsistencyReport, outdir: str) -> list[str]:
    _ensure(outdir)
    rows = report.worst_first()
    csv_path = os.path.join(outdir, "consistency.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["child", "child_state", "parent", "computed", "stated",
             "residual", "hull_low", "hull_high", "in_hull", "hull_flag",
             "inconsistent", "missing"]
        )
        for p in report.pairs:
            w.writerow(
                [p.child, p.child_state, p.parent,
                 p.computed, p.stated, p.residual,
                 p.hull[0] if p.hull else None,
                 p.hull[1] if p.hull else None,
                 p.in_hull, p.hull_flag, p.inconsistent,
                 ";".join(p.missing)]
            )
    paths = [csv_path]
    if rows:
        labels = [f"{p.child}|{p.parent}" + (f" [{p.child_state}]" if p.child_state else "")
                  for p in rows]
        values = [p.residual for p in rows]
        colors = ["#c0392b" if p.inconsistent else "#27ae60" for p in rows]
        fig, ax = plt.subplots(figsize=(7, max(2.0, 0.35 * len(rows))))
        ax.barh(range(len(rows)), values, color=colors)
        ax.axvline(report.tolerance, color="#555", linestyle="--",
                   label=f"tolerance {report.tolerance:g}")
        ax.set_yticks(range(len(rows)))
        ax.set_yticklabels(labels, fontsize=8)
        ax.invert_yaxis()
        ax.set_xlabel("|computed - stated| residual")
        ax.set_title("Mixture-identity residuals by pair")
        ax.legend(loc="lower right", fontsize=8)
        paths.append(_save(fig, outdir, "consistency.png"))
    return paths


def write_counts_report(counts: ParameterCounts, outdir: str) -> list[str]:
    _ensure(outdir)
    csv_path = os.path.join(outdir, "counts.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["variable", "classical", "reduced_marginals",
             "reduced_conditionals", "reduced_total"]
        )
        for n in counts.nodes:
            w.writerow([n.variable, n.classical, n.reduced_marginals,
                        n.reduced_conditionals, n.reduced_total])
        w.writerow(["TOTAL", counts.classical_total, "", "", counts.reduced_total])
    nodes = sorted(counts.nodes, key=lambda n: -n.classical)
    fig, ax = plt.subplots(figsize=(max(6, 0.45 * len(nodes)), 4))
    x = range(len(nodes))
    width = 0.4
    ax.bar([i - width / 2 for i in x], [n.classical for n in nodes],
           width=width, label="classical", color="#7f8c8d")
    ax.bar([i + width / 2 for i in x], [n.reduced_total for n in nodes],
           width=width, label="reduced", color="#2980b9")
    ax.set_xticks(list(x))
    ax.set_xticklabels([n.variable for n in nodes], rotation=60, fontsize=8)
    ax.set_yscale("log")
    ax.set_ylabel("values to elicit (log scale)")
    ax.set_title(
        f"Elicitation burden: {counts.classical_total} classical vs "
        f"{counts.reduced_total} reduced ({counts.convention})"
    )
    ax.legend()
    return [csv_path, _save(fig, outdir, "counts.png")]


def write_sensitivity_report(report: SensitivityReport, outdir: str) -> list[str]:
    _ensure(outdir)
    csv_path = os.path.join(outdir, "sensitivity.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["input", "spread"] + ["state:value"])
        for r in report.rows:
            w.writerow(
                [r.input, r.spread]
                + [f"{s}:{v}" for s, v in r.values.items()]
            )
    fig, ax = plt.subplots(figsize=(7, max(2.0, 0.4 * len(report.rows))))
    names = [r.input for r in report.rows]
    ax.barh(range(len(names)), [r.spread for r in report.rows], color="#8e44ad")
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=9)
    ax.invert_yaxis()
    ax.set_xlabel(
        f"spread of P({report.target}={report.designated_state} | input)"
    )
    ax.set_title("Input influence ranking")
    return [csv_path, _save(fig, outdir, "sensitivity.png")]


def write_whatif_report(
    base: PosteriorReport,
    scenarios: list[tuple[str, PosteriorReport]],
    outdir: str,
) -> list[str]:
    _ensure(outdir)
    states = list(base.distribution)
    csv_path = os.path.join(outdir, "whatif.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["scenario"] + states)
        w.writerow(["base"] + [base.distribution[s] for s in states])
        for name, rep in scenarios:
            w.writerow([name] + [rep.distribution[s] for s in states])
    columns = [("base", base)] + scenarios
    fig, ax = plt.subplots(figsize=(max(5, 1.6 * len(columns)), 4))
    width = 0.8 / len(states)
    for k, state in enumerate(states):
        xs = [i + k * width for i in range(len(columns))]
        ax.bar(xs, [rep.distribution[state] for _, rep in columns],
               width=width, label=state)
    ax.set_xticks([i + width * (len(states) - 1) / 2 for i in range(len(columns))])
    ax.set_xticklabels([name for name, _ in columns], rotation=20, fontsize=9)
    ax.set_ylabel(f"P({base.variable})")
    ax.set_title("Maintenance what-if: base vs scenarios")
    ax.legend(fontsize=8)
    return [csv_path, _save(fig, outdir, "whatif.png")]
