"""Serialization of reports: canonical JSON, CSV rows, optional figures.

JSON is the source of truth; CSV flattens it one row per sample plus one
summary row per verdict.  Output is deterministic: keys sorted, floats in
repr form, no timestamps.  Non-finite floats are encoded as the strings
"inf", "-inf", "nan" so the documents stay valid strict JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math

import jsonschema

from .schemas import SCHEMAS


def sanitize(obj):
    """Recursively convert to plain JSON types; encode non-finite floats."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "item") and not hasattr(obj, "__len__"):
        obj = obj.item()
        return sanitize(obj) if not isinstance(obj, float) else sanitize(float(obj))
    if hasattr(obj, "tolist"):
        return sanitize(obj.tolist())
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    return obj


def validate_report(doc: dict, kind: str) -> None:
    """Schema check; raises jsonschema.ValidationError on mismatch."""
    jsonschema.validate(doc, SCHEMAS[kind])


def to_json(doc) -> str:
    clean = sanitize(doc)
    return json.dumps(clean, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
    return str(v)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


METRIC_CSV_HEADER = ["metric", "value", "error", "stable"]


def metric_rows(doc: dict):
    return [[r["metric"], r["value"], r["error"], r.get("stable")]
            for r in doc["results"]]


HISTORY_CSV_HEADER = ["history", "metric", "kind", "t", "value", "error",
                      "stable", "resolution_limited", "verdict", "tol", "notes"]


def history_rows(reports):
    """One row per sample, then one summary row per report."""
    rows = []
    for rep in reports:
        for s in rep["samples"]:
            rows.append([rep["history"], rep["metric"], "sample", s["t"],
                         s["value"], s["error"], s.get("stable"),
                         s["resolution_limited"], None, None, None])
        rows.append([rep["history"], rep["metric"], "verdict", None, None,
                     None, None, None, rep["verdict"], rep["tol"],
                     rep.get("notes", "")])
    return rows


MATRIX_CSV_HEADER = ["space", "alpha", "beta", "relation", "witnesses"]


def matrix_rows(doc: dict):
    rows = []
    for key in sorted(doc["entries"]):
        a, b = key.split("|", 1)
        cell = doc["entries"][key]
        rows.append([doc["space"], a, b, cell["relation"],
                     ";".join(cell["witnesses"])])
    return rows


AUDIT_CSV_HEADER = ["name", "trials", "checked", "skipped", "violations",
                    "worst_margin", "note"]


def audit_rows(doc: dict):
    return [[a["name"], a["trials"], a["checked"], a["skipped"],
             a["violations"], a["worst_margin"], a.get("note", "")]
            for a in doc["audits"]]


# ---- figures (opt-in; the CLI's report path renders these next to the data) ----

def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_history_figure(reports, path: str) -> None:
    """Log-log track per metric with error bars and the verdict in the label."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for rep in reports:
        ts, vs, es = [], [], []
        for s in rep["samples"]:
            v = s["value"]
            if isinstance(v, str) or s["resolution_limited"]:
                continue
            ts.append(s["t"])
            vs.append(max(v, 1e-12))
            es.append(s["error"] if not isinstance(s["error"], str) else 0.0)
        if not ts:
            continue
        ax.errorbar(ts, vs, yerr=es, marker="o", capsize=2,
                    label=f"{rep['metric']}: {rep['verdict']}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("metric value")
    ax.set_title(reports[0]["history"] if reports else "history")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_matrix_figure(doc: dict, path: str) -> None:
    """Relation table: filled cells are NOT-FINER(row over column)."""
    plt = _pyplot()
    labels = doc["metrics"]
    n = len(labels)
    fig, ax = plt.subplots(figsize=(1.2 * n + 2.0, 1.0 * n + 1.5))
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if a == b:
                ax.add_patch(plt.Rectangle((j, n - 1 - i), 1, 1, color="0.85"))
                continue
            cell = doc["entries"][f"{a}|{b}"]
            if cell["relation"] == "NOT-FINER":
                ax.add_patch(plt.Rectangle((j, n - 1 - i), 1, 1,
                                           color="#d9534f", alpha=0.7))
                wit = cell["witnesses"][0] if cell["witnesses"] else ""
                ax.text(j + 0.5, n - 1 - i + 0.5, wit, ha="center",
                        va="center", fontsize=7)
    ax.set_xticks([k + 0.5 for k in range(n)])
    ax.set_xticklabels(labels)
    ax.set_yticks([n - 1 - k + 0.5 for k in range(n)])
    ax.set_yticklabels(labels)
    ax.set_xlim(0, n)
    ax.set_ylim(0, n)
    ax.set_xlabel("beta (target topology)")
    ax.set_ylabel("alpha (converging metric)")
    ax.set_title(f"space {doc['space']}: NOT-FINER(alpha over beta) cells")
    for k in range(n + 1):
        ax.axhline(k, color="k", lw=0.5)
        ax.axvline(k, color="k", lw=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_audit_figure(doc: dict, path: str) -> None:
    """Worst margin per audit; everything above zero is a pass."""
    plt = _pyplot()
    names = [a["name"] for a in doc["audits"]]
    margins = [a["worst_margin"] if not isinstance(a["worst_margin"], str)
               else 0.0 for a in doc["audits"]]
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    colors = ["#5cb85c" if a["violations"] == 0 else "#d9534f"
              for a in doc["audits"]]
    ax.bar(range(len(names)), margins, color=colors)
    ax.axhline(0.0, color="k", lw=1.0)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=20)
    ax.set_ylabel("worst margin (bound minus value)")
    ax.set_title(f"bound audits, {doc['trials']} checked pairs each")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
