"""Deterministic report serialization: JSON, long-format CSV, and Markdown."""

from __future__ import annotations

import csv
import enum
import io
import json

from .config import PAIRWISE_TASKS
from .runners import ExperimentReport


class ReportFormat(str, enum.Enum):
    STRUCTURED = "json"
    DELIMITED = "csv"
    MARKDOWN = "md"


def _fmt(value: float | None) -> str:
    return "-" if value is None else f"{value:.3f}"


def emit_report(report: ExperimentReport, fmt: ReportFormat = ReportFormat.STRUCTURED) -> bytes:
    if fmt is ReportFormat.STRUCTURED:
        text = json.dumps(report.to_dict(), ensure_ascii=False, sort_keys=True, indent=2) + "\n"
        return text.encode("utf-8")
    if fmt is ReportFormat.DELIMITED:
        return _emit_csv(report)
    return _emit_markdown(report)


def _emit_csv(report: ExperimentReport) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["section", "key", "metric", "value"])
    if report.kind == "pairwise":
        for task, cells in sorted(report.tables["tasks"].items()):
            if "accuracy" not in cells:
                continue
            writer.writerow(["task", task, "accuracy", _fmt(cells["accuracy"])])
            writer.writerow(["task", task, "invalid_proportion", _fmt(cells["invalid_proportion"])])
            for label, f1 in sorted(cells["per_label_f1"].items()):
                writer.writerow(["f1", task, label, _fmt(f1["f1"])])
        if "average_accuracy" in report.tables:
            writer.writerow(["summary", "all", "average_accuracy", _fmt(report.tables["average_accuracy"])])
    elif report.kind == "scoring":
        for group, cell in sorted(report.tables["correlations"].items()):
            writer.writerow(["correlation", group, "somers_d", _fmt(cell.get("somers_d"))])
            if "spearman" in cell:
                writer.writerow(["correlation", group, "spearman", _fmt(cell.get("spearman"))])
            writer.writerow(["correlation", group, "n", str(cell["n"])])
        for group, cell in sorted(report.tables.get("per_step_correlations", {}).items()):
            writer.writerow(["step_correlation", group, "somers_d", _fmt(cell.get("somers_d"))])
        writer.writerow(
            ["summary", report.tables["method"], "invalid_call_proportion", _fmt(report.tables["invalid_call_proportion"])]
        )
    elif report.kind == "ranking":
        writer.writerow(["ranking", report.tables["method"], "accuracy", _fmt(report.tables["accuracy"])])
        writer.writerow(["ranking", report.tables["method"], "n_questions", str(report.tables["n_questions"])])
    return buffer.getvalue().encode("utf-8")


def _emit_markdown(report: ExperimentReport) -> bytes:
    lines: list[str] = []
    if report.kind == "pairwise":
        lines.append("# Pairwise comparison")
        lines.append("")
        columns = [t.value for t in PAIRWISE_TASKS if t.value in report.tables["tasks"]]
        header = ["Metric", *columns, "Avg."]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "---|" * len(header))
        accuracy_row = ["accuracy"]
        invalid_row = ["invalid proportion"]
        for task in columns:
            cells = report.tables["tasks"][task]
            accuracy_row.append(_fmt(cells.get("accuracy")))
            invalid_row.append(_fmt(cells.get("invalid_proportion")))
        accuracy_row.append(_fmt(report.tables.get("average_accuracy")))
        invalid_row.append("-")
        lines.append("| " + " | ".join(accuracy_row) + " |")
        lines.append("| " + " | ".join(invalid_row) + " |")
        lines.append("")
        lines.append("## Per-label F1")
        lines.append("")
        lines.append("| Task | Label | F1 | Precision | Recall | Support |")
        lines.append("|---|---|---|---|---|---|")
        for task in columns:
            cells = report.tables["tasks"][task]
            for label, f1 in sorted(cells.get("per_label_f1", {}).items()):
                lines.append(
                    f"| {task} | {label} | {_fmt(f1['f1'])} | {_fmt(f1['precision'])} "
                    f"| {_fmt(f1['recall'])} | {f1['support']} |"
                )
    elif report.kind == "scoring":
        lines.append(f"# Scoring evaluation ({report.tables['method']})")
        lines.append("")
        lines.append("| Group | Somers' D | Spearman | n | Invalid |")
        lines.append("|---|---|---|---|---|")
        for group, cell in sorted(report.tables["correlations"].items()):
            lines.append(
                f"| {group} | {_fmt(cell.get('somers_d'))} | {_fmt(cell.get('spearman'))} "
                f"| {cell['n']} | {_fmt(cell.get('invalid_proportion'))} |"
            )
        if report.tables.get("per_step_correlations"):
            lines.append("")
            lines.append("## Step-level correlations")
            lines.append("")
            lines.append("| Group | Somers' D | Spearman | n |")
            lines.append("|---|---|---|---|")
            for group, cell in sorted(report.tables["per_step_correlations"].items()):
                lines.append(
                    f"| {group} | {_fmt(cell.get('somers_d'))} | {_fmt(cell.get('spearman'))} | {cell['n']} |"
                )
    elif report.kind == "ranking":
        lines.append("# Choice ranking")
        lines.append("")
        lines.append("| Method | Accuracy | Questions | Options |")
        lines.append("|---|---|---|---|")
        lines.append(
            f"| {report.tables['method']} | {_fmt(report.tables['accuracy'])} "
            f"| {report.tables['n_questions']} | {report.tables['n_options']} |"
        )
    lines.append("")
    return ("\n".join(lines)).encode("utf-8")
