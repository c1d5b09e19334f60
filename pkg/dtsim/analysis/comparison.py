import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel

from dtsim.analysis.bounds import theorem_gap_bound
from dtsim.analysis.metrics import BacklogSummary, average_backlog, summarize_backlog
from dtsim.core.exceptions import UsageError
from dtsim.engine.simulator import run_replications
from dtsim.models.trace import Trace, release_traces
from dtsim.schemas.common import BootstrapMode, ControllerMode, Rational
from dtsim.schemas.policy import policy_label
from dtsim.schemas.scenario import ScenarioConfig
from dtsim.utils.export import format_table, rows_to_csv
from dtsim.utils.helpers import format_decimal

logger = logging.getLogger(__name__)

CSV_HEADER = ["mode", "delay", "rep", "avg_total", "avg_transmitters", "avg_receivers", "gap_bound", "policy"]


class ComparisonRow(BaseModel):
    mode: ControllerMode
    delay: int
    rep: int
    policy: str
    avg_total: Rational
    avg_transmitters: Rational
    avg_receivers: Rational
    gap_bound: Optional[Rational] = None


class ComparisonCell(BaseModel):
    mode: ControllerMode
    delay: int
    policy: str
    summary: BacklogSummary
    gap_bound: Optional[Rational] = None


class ComparisonReport(BaseModel):
    warmup: int = 0
    rows: List[ComparisonRow] = []
    cells: List[ComparisonCell] = []

    def cell(self, mode, delay: int, policy: Optional[str] = None) -> ComparisonCell:
        mode = ControllerMode(mode)
        for cell in self.cells:
            if cell.mode == mode and cell.delay == delay and (policy is None or cell.policy == policy):
                return cell
        raise KeyError(f"no cell for mode={mode.value} delay={delay} policy={policy}")

    def to_csv(self, places: int = 6) -> str:
        def fmt(value: Optional[Fraction]) -> str:
            return "" if value is None else format_decimal(value, places)

        rows = [
            [
                row.mode.value,
                row.delay,
                row.rep,
                fmt(row.avg_total),
                fmt(row.avg_transmitters),
                fmt(row.avg_receivers),
                fmt(row.gap_bound),
                row.policy,
            ]
            for row in self.rows
        ]
        return rows_to_csv(CSV_HEADER, rows)

    def to_table(self, places: int = 4) -> str:
        header = ["mode", "policy", "delay", "reps", "mean", "stderr", "gap_bound"]
        rows = []
        for cell in self.cells:
            rows.append(
                [
                    cell.mode.value,
                    cell.policy,
                    str(cell.delay),
                    str(len(cell.summary.per_replication)),
                    format_decimal(cell.summary.mean, places),
                    f"{cell.summary.stderr:.{places}f}",
                    "" if cell.gap_bound is None else format_decimal(cell.gap_bound, places),
                ]
            )
        return format_table(header, rows, title=f"average backlog (warmup {self.warmup})")


def summarize_runs(
    cfg: ScenarioConfig, traces: Sequence[Trace], warmup: int = 0
) -> Tuple[List[ComparisonRow], ComparisonCell]:
    """Per-replication rows and the summary cell for one configuration."""
    label = policy_label(cfg.policy)
    bound = theorem_gap_bound(cfg) if cfg.controller == ControllerMode.UT else None
    rows = [
        ComparisonRow(
            mode=cfg.controller,
            delay=cfg.D,
            rep=trace.replication,
            policy=label,
            avg_total=average_backlog(trace, "all", warmup),
            avg_transmitters=average_backlog(trace, "transmitters", warmup),
            avg_receivers=average_backlog(trace, "receivers", warmup),
            gap_bound=bound,
        )
        for trace in traces
    ]
    cell = ComparisonCell(
        mode=cfg.controller,
        delay=cfg.D,
        policy=label,
        summary=summarize_backlog(traces, start=warmup),
        gap_bound=bound,
    )
    return rows, cell


def compare_modes(
    cfg: ScenarioConfig,
    modes: Sequence[ControllerMode],
    delays: Sequence[int],
    policies: Optional[Sequence] = None,
    warmup: int = 0,
    replications: Optional[int] = None,
    workers: Optional[int] = None,
) -> ComparisonReport:
    """Run every (mode, delay, policy) cell and summarize average backlog over [warmup, T).

    `policies` adds extra policy rows (for instance an instantaneous GreedyMatch
    comparator next to a tracked MaxWeightMatch); by default the scenario's own
    policy is used.
    """
    if not delays:
        raise UsageError("at least one delay is required")
    if not modes:
        raise UsageError("at least one controller mode is required")
    if warmup < 0 or warmup >= cfg.T:
        raise UsageError(f"warmup must lie in [0, {cfg.T})")

    report = ComparisonReport(warmup=warmup)
    policy_list = list(policies) if policies else [cfg.policy]
    for policy in policy_list:
        for mode in modes:
            mode = ControllerMode(mode)
            for delay in delays:
                cell_cfg = cfg.replace(controller=mode, delay=delay, policy=policy, replications=replications)
                logger.info("comparing %s D=%d policy=%s", mode.value, delay, policy_label(cell_cfg.policy))
                traces = run_replications(cell_cfg, workers=workers)
                try:
                    rows, cell = summarize_runs(cell_cfg, traces, warmup)
                finally:
                    release_traces(traces)
                report.rows.extend(rows)
                report.cells.append(cell)
    return report


class BootstrapComparison(BaseModel):
    delay: int
    idle: BacklogSummary
    act_on_available: BacklogSummary

    @property
    def ordered(self) -> bool:
        """ActOnAvailable mean no worse than Idle."""
        return self.act_on_available.mean <= self.idle.mean


def compare_bootstrap(
    cfg: ScenarioConfig,
    delays: Sequence[int],
    replications: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[BootstrapComparison]:
    """Tracking control under both bootstrap modes, same streams per replication."""
    if not delays:
        raise UsageError("at least one delay is required")
    out = []
    for delay in delays:
        summaries = {}
        for mode in (BootstrapMode.IDLE, BootstrapMode.ACT_ON_AVAILABLE):
            cell_cfg = cfg.replace(
                controller=ControllerMode.UT, bootstrap=mode, delay=delay, replications=replications
            )
            traces = run_replications(cell_cfg, workers=workers)
            try:
                summaries[mode] = summarize_backlog(traces)
            finally:
                release_traces(traces)
        comparison = BootstrapComparison(
            delay=delay,
            idle=summaries[BootstrapMode.IDLE],
            act_on_available=summaries[BootstrapMode.ACT_ON_AVAILABLE],
        )
        if not comparison.ordered:
            logger.warning(
                "D=%d: act_on_available mean %s exceeds idle mean %s",
                delay,
                format_decimal(comparison.act_on_available.mean),
                format_decimal(comparison.idle.mean),
            )
        out.append(comparison)
    return out
