"""Before/after metric deltas and table-shaped robustness reports.

The headline number is the signed relative change
100 * (after - before) / before; aggregation recomputes that percentage
from aggregated means rather than averaging per-row percentages, which
keeps it invariant under metric rescaling.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_UP, Decimal

from codemorph.errors import EmptyCategory, ShapeMismatch, UnknownFormat, ZeroBaseline


@dataclass(frozen=True)
class EvalPair:
    metric_name: str
    before: float  # without transformation
    after: float  # with transformation


def improvement_pct(pair: EvalPair) -> float:
    """Signed relative change in percent; negative means degradation."""
    if pair.before == 0:
        raise ZeroBaseline("cannot compute a relative change against 0")
    return 100.0 * (pair.after - pair.before) / pair.before


def round_half_up(value: float, digits: int = 2) -> float:
    quantum = Decimal(10) ** -digits
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class DeltaRow:
    scope: str  # strategy id, category tag or "T_all"
    metric_name: str
    before: float
    after: float

    @property
    def imp_pct(self) -> float:
        return improvement_pct(EvalPair(self.metric_name, self.before, self.after))

    @property
    def direction(self) -> str:
        if self.after > self.before:
            return "increase"
        if self.after < self.before:
            return "decrease"
        return "unchanged"

    def rendered_imp(self) -> str:
        magnitude = round_half_up(abs(self.imp_pct))
        arrow = {"increase": "↑", "decrease": "↓", "unchanged": "→"}[self.direction]
        return f"{arrow} {magnitude:.2f}"


@dataclass(frozen=True)
class Report:
    task: str  # completion | summarization | search
    language: str
    rows: tuple[DeltaRow, ...]
    runs_averaged: int = 1

    def to_json(self) -> dict:
        return {
            "task": self.task,
            "language": self.language,
            "runs_averaged": self.runs_averaged,
            "rows": [
                {"scope": r.scope, "metric": r.metric_name, "before": r.before,
                 "after": r.after, "imp_pct": r.imp_pct, "direction": r.direction}
                for r in self.rows
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Report":
        rows = tuple(DeltaRow(scope=r["scope"], metric_name=r["metric"],
                              before=r["before"], after=r["after"])
                     for r in obj["rows"])
        return cls(task=obj["task"], language=obj["language"], rows=rows,
                   runs_averaged=obj.get("runs_averaged", 1))


def aggregate_category(rows: list[EvalPair], category: str) -> DeltaRow:
    """Category row: arithmetic means of the per-strategy before/after
    scores (each evaluated on its own transformable subset)."""
    if not rows:
        raise EmptyCategory(f"no strategy rows for {category}")
    metrics = {r.metric_name for r in rows}
    if len(metrics) != 1:
        raise ValueError(f"mixed metrics in one category: {sorted(metrics)}")
    before = sum(r.before for r in rows) / len(rows)
    after = sum(r.after for r in rows) / len(rows)
    return DeltaRow(scope=category, metric_name=rows[0].metric_name,
                    before=before, after=after)


def overall_row(category_rows: list[DeltaRow]) -> DeltaRow:
    """The T_all summary: mean of the category before/after values."""
    if not category_rows:
        raise EmptyCategory("no category rows to summarize")
    metric = category_rows[0].metric_name
    before = sum(r.before for r in category_rows) / len(category_rows)
    after = sum(r.after for r in category_rows) / len(category_rows)
    return DeltaRow(scope="T_all", metric_name=metric, before=before, after=after)


def build_report(task: str, language: str, category_rows: list[DeltaRow],
                 tall_mode: str = "categories",
                 strategy_rows: list[DeltaRow] | None = None) -> Report:
    """Assemble category rows plus the T_all summary. tall_mode selects
    whether T_all averages the category rows or the raw strategy rows."""
    rows = list(category_rows)
    if len(category_rows) >= 2:
        if tall_mode == "strategies" and strategy_rows:
            rows.append(replace(overall_row(strategy_rows), scope="T_all"))
        else:
            rows.append(overall_row(category_rows))
    return Report(task=task, language=language, rows=tuple(rows))


def average_runs(reports: list[Report]) -> Report:
    """Element-wise mean over repeated runs; imp%% is recomputed from the
    averaged scores."""
    if not reports:
        raise ShapeMismatch("no reports to average")
    first = reports[0]
    for other in reports[1:]:
        if other.task != first.task or other.language != first.language:
            raise ShapeMismatch("reports describe different experiments")
        if [(r.scope, r.metric_name) for r in other.rows] != \
                [(r.scope, r.metric_name) for r in first.rows]:
            raise ShapeMismatch("reports have different row structure")
    n = len(reports)
    rows = []
    for i, row in enumerate(first.rows):
        before = sum(rep.rows[i].before for rep in reports) / n
        after = sum(rep.rows[i].after for rep in reports) / n
        rows.append(DeltaRow(scope=row.scope, metric_name=row.metric_name,
                             before=before, after=after))
    return Report(task=first.task, language=first.language, rows=tuple(rows),
                  runs_averaged=sum(r.runs_averaged for r in reports))


def render(report: Report, format: str = "markdown") -> bytes:
    if format == "json":
        return (json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n").encode()
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["scope", "metric", "without_transform", "with_transform", "imp_pct", "direction"])
        for row in report.rows:
            writer.writerow([row.scope, row.metric_name, f"{row.before:.6f}",
                             f"{row.after:.6f}", f"{row.imp_pct:.6f}", row.direction])
        return buf.getvalue().encode()
    if format == "markdown":
        lines = [
            f"# {report.task} ({report.language}), runs averaged: {report.runs_averaged}",
            "",
            "| Type | w/o t. | w. t. | imp. (%) |",
            "| --- | --- | --- | --- |",
        ]
        for row in report.rows:
            lines.append(f"| {row.scope} | {row.before:.4f} | {row.after:.4f} | {row.rendered_imp()} |")
        return ("\n".join(lines) + "\n").encode()
    raise UnknownFormat(f"unsupported format {format!r}")
