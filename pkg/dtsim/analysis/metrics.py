# analysis/metrics.py

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from dtsim.core.exceptions import UsageError
from dtsim.models.trace import LegTrace, Trace
from dtsim.schemas.common import Direction, Rational
from dtsim.utils.helpers import mean_and_stderr
from dtsim.utils.validators import validate_window

SELECTORS = ("all", "transmitters", "receivers")

# d(t) when the queue never empties again before the horizon
BEYOND_HORIZON = -1


def _legs(trace: Trace, direction: Optional[Direction]) -> List[LegTrace]:
    if direction is None:
        return list(trace.legs.values())
    return [trace.leg(direction)]


def _window(trace: Trace, start: int, end: Optional[int]) -> Tuple[int, int]:
    end = trace.horizon if end is None else end
    if not validate_window(start, end, trace.horizon) or start == end:
        raise UsageError(f"window [{start}, {end}) is not a non-empty part of [0, {trace.horizon})")
    return start, end


def _selected_series(leg: LegTrace, selector: str) -> np.ndarray:
    """Per-slot summed backlog of the selected side, shape (T,)."""
    if selector not in SELECTORS:
        raise UsageError(f"unknown queue selector {selector!r}; expected one of {', '.join(SELECTORS)}")
    series = np.zeros(leg.horizon, dtype=np.int64)
    if selector in ("all", "transmitters"):
        series += leg.backlog_tx().sum(axis=(1, 2))
    if selector in ("all", "receivers"):
        series += leg.backlog_rx().sum(axis=(1, 2))
    return series


def backlog_series(trace: Trace, selector: str = "all", direction: Optional[Direction] = None) -> np.ndarray:
    return sum(_selected_series(leg, selector) for leg in _legs(trace, direction))


def average_backlog(
    trace: Trace,
    selector: str = "all",
    start: int = 0,
    end: Optional[int] = None,
    direction: Optional[Direction] = None,
) -> Fraction:
    """(1/|W|) * sum over t in W = [start, end) of the selected backlog Q(t), exactly."""
    start, end = _window(trace, start, end)
    series = backlog_series(trace, selector, direction)
    return Fraction(int(series[start:end].sum()), end - start)


def queue_averages(
    trace: Trace, start: int = 0, end: Optional[int] = None, direction: Optional[Direction] = None
) -> Dict[str, Fraction]:
    """Time-average of every individual queue, keyed like `q.j2.k1` (`up.`/`down.` prefixed when bidirectional)."""
    start, end = _window(trace, start, end)
    span = end - start
    legs = _legs(trace, direction)
    averages: Dict[str, Fraction] = {}
    for leg in legs:
        prefix = "" if len(trace.legs) == 1 else ("up." if leg.direction == Direction.UPLINK else "down.")
        info = leg.leg
        for label, block in ((info.tx_label, leg.q_tx), (info.rx_label, leg.q_rx)):
            sums = block[start:end].sum(axis=0)
            for node in range(sums.shape[0]):
                for k in range(sums.shape[1]):
                    averages[f"{prefix}q.{label}{node + 1}.k{k + 1}"] = Fraction(int(sums[node, k]), span)
    return averages


class BacklogSummary(BaseModel):
    """Time-average backlogs across replications.

    `per_queue` and `total` belong to the first replication; `per_replication`
    holds the total for each, summarized by `mean` and `stderr`.
    """

    per_queue: Dict[str, Rational]
    total: Rational
    per_replication: List[Rational]
    mean: Rational
    stderr: float = Field(ge=0)


def summarize_backlog(
    traces: Sequence[Trace],
    start: int = 0,
    end: Optional[int] = None,
    direction: Optional[Direction] = None,
) -> BacklogSummary:
    if not traces:
        raise UsageError("no traces to summarize")
    per_queue = queue_averages(traces[0], start, end, direction)
    totals = [average_backlog(trace, "all", start, end, direction) for trace in traces]
    mean, stderr = mean_and_stderr(totals)
    return BacklogSummary(
        per_queue=per_queue,
        total=sum(per_queue.values(), Fraction(0)),
        per_replication=totals,
        mean=mean,
        stderr=stderr,
    )


def empty_times(series: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """(d, e) for one backlog sequence.

    d(t): slots until the queue is next empty (0 when empty now, BEYOND_HORIZON
    when it never empties again). e(t): slots since it was last empty, counting
    the empty state before slot 0.
    """
    values = np.asarray(series)
    n = len(values)
    d = np.zeros(n, dtype=np.int64)
    e = np.zeros(n, dtype=np.int64)

    next_empty = None
    for t in range(n - 1, -1, -1):
        if values[t] == 0:
            next_empty = t
            d[t] = 0
        else:
            d[t] = BEYOND_HORIZON if next_empty is None else next_empty - t

    last_empty = -1
    for t in range(n):
        if values[t] == 0:
            last_empty = t
        e[t] = t - last_empty
    return d, e


@dataclass(frozen=True)
class EmptyQueueStats:
    """d and e for every queue of one leg, rows in trace CSV order (transmitters, then receivers)."""

    labels: Tuple[str, ...]
    d: np.ndarray
    e: np.ndarray

    def row(self, label: str) -> int:
        return self.labels.index(label)


def empty_queue_stats(trace: Trace, direction: Optional[Direction] = None) -> EmptyQueueStats:
    leg = trace.primary if direction is None else trace.leg(direction)
    info = leg.leg
    labels, rows_d, rows_e = [], [], []
    for label, block in ((info.tx_label, leg.backlog_tx()), (info.rx_label, leg.backlog_rx())):
        for node in range(block.shape[1]):
            for k in range(block.shape[2]):
                d, e = empty_times(block[:, node, k])
                labels.append(f"{label}{node + 1}.k{k + 1}")
                rows_d.append(d)
                rows_e.append(e)
    return EmptyQueueStats(labels=tuple(labels), d=np.array(rows_d), e=np.array(rows_e))


def stability_slope(
    trace: Trace,
    window: Tuple[int, int],
    selector: str = "all",
    direction: Optional[Direction] = None,
) -> Fraction:
    """Least-squares slope of backlog against t over [start, end), exactly."""
    start, end = window
    if end - start < 2:
        raise UsageError("stability window needs at least 2 slots")
    start, end = _window(trace, start, end)
    series = backlog_series(trace, selector, direction)[start:end]
    n = end - start
    ts = range(start, end)
    t_mean = Fraction(sum(ts), n)
    y_mean = Fraction(int(series.sum()), n)
    covariance = sum((t - t_mean) * (int(y) - y_mean) for t, y in zip(ts, series))
    variance = sum((t - t_mean) ** 2 for t in ts)
    return covariance / variance
