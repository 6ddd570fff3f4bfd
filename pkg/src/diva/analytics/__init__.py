from .compare import (
    ComparisonResult,
    class_counts,
    common_infected,
    compare_runs,
    f1_per_iteration,
)
from .report import ReportData, build_report, comparison_csv, report_csv, series_csv
from .stats import Scope, StatResult, available_stats, compute_stat

__all__ = [
    "ComparisonResult",
    "ReportData",
    "Scope",
    "StatResult",
    "available_stats",
    "build_report",
    "class_counts",
    "common_infected",
    "compare_runs",
    "comparison_csv",
    "compute_stat",
    "f1_per_iteration",
    "report_csv",
    "series_csv",
]
