from dtsim.analysis.bounds import BoundTerms, composite_bound_terms, theorem_gap_bound
from dtsim.analysis.comparison import (
    BootstrapComparison,
    ComparisonCell,
    ComparisonReport,
    ComparisonRow,
    compare_bootstrap,
    compare_modes,
    summarize_runs,
)
from dtsim.analysis.coupling import (
    CoupledRuns,
    CouplingViolation,
    all_coupling_violations,
    check_downlink_domination,
    check_downlink_receiver_average,
    check_emulated_ideal,
    check_real_emulated_gap,
    check_receiver_average_identity,
    check_receiver_identity,
    run_coupled,
)
from dtsim.analysis.metrics import (
    BEYOND_HORIZON,
    BacklogSummary,
    EmptyQueueStats,
    average_backlog,
    backlog_series,
    empty_queue_stats,
    empty_times,
    queue_averages,
    stability_slope,
    summarize_backlog,
)

__all__ = [
    "BoundTerms",
    "composite_bound_terms",
    "theorem_gap_bound",
    "BootstrapComparison",
    "ComparisonCell",
    "ComparisonReport",
    "ComparisonRow",
    "compare_bootstrap",
    "compare_modes",
    "summarize_runs",
    "CoupledRuns",
    "CouplingViolation",
    "all_coupling_violations",
    "check_downlink_domination",
    "check_downlink_receiver_average",
    "check_emulated_ideal",
    "check_real_emulated_gap",
    "check_receiver_average_identity",
    "check_receiver_identity",
    "run_coupled",
    "BEYOND_HORIZON",
    "BacklogSummary",
    "EmptyQueueStats",
    "average_backlog",
    "backlog_series",
    "empty_queue_stats",
    "empty_times",
    "queue_averages",
    "stability_slope",
    "summarize_backlog",
]
