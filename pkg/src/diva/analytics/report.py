"""Report bundles: chart-ready series plus CSV export.

A report packages per-model class series (and, for dual runs, the
comparison series) as one JSON document for the webapp and as flat CSV for
the CLI.  CSV layouts are fixed so downstream diffing is byte-stable:
``report.csv`` is long-format (model,iteration,code,count) and
``comparison.csv`` is one row per iteration.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from ..diffusion.trace import IterationTrace
from ..errors import LengthMismatch
from .compare import ComparisonResult, class_counts, extend_to


@dataclass(frozen=True)
class ReportData:
    models: list[dict]
    comparison: ComparisonResult | None = None

    def to_dict(self) -> dict:
        doc = {
            "models": [
                {
                    "label": m["label"],
                    "kind": m["kind"],
                    "series": {str(c): s for c, s in sorted(m["series"].items())},
                }
                for m in self.models
            ]
        }
        if self.comparison is not None:
            doc["comparison"] = self.comparison.to_dict()
        return doc


def build_report(
    traces: list[IterationTrace],
    comparison: ComparisonResult | None = None,
    labels: list[str] | None = None,
) -> ReportData:
    """Package one or more traces (plus an optional comparison) for charting."""
    if not traces:
        raise LengthMismatch("report requires at least one trace")
    length = max(len(t) for t in traces)
    extended = [extend_to(t, length) for t in traces]
    if labels is None:
        labels = [chr(ord("a") + i) for i in range(len(extended))]
    models = [
        {"label": label, "kind": t.model_kind, "series": class_counts(t)}
        for label, t in zip(labels, extended)
    ]
    return ReportData(models=models, comparison=comparison)


def series_csv(series) -> str:
    """One series as ``iteration,value`` rows."""
    out = io.StringIO()
    out.write("iteration,value\n")
    for i, v in enumerate(series):
        out.write(f"{i},{v}\n")
    return out.getvalue()


def report_csv(report: ReportData) -> str:
    out = io.StringIO()
    out.write("model,iteration,code,count\n")
    for m in report.models:
        for code in sorted(m["series"]):
            for i, count in enumerate(m["series"][code]):
                out.write(f"{m['label']},{i},{code},{count}\n")
    return out.getvalue()


def comparison_csv(comparison: ComparisonResult) -> str:
    out = io.StringIO()
    out.write("iteration,f1,common_infected\n")
    for i, (f1, common) in enumerate(
        zip(comparison.f1_per_iteration, comparison.common_infected)
    ):
        out.write(f"{i},{f1:.6f},{common}\n")
    return out.getvalue()
