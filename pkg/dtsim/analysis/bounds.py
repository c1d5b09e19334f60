"""
Performance bounds for tracking control.

`theorem_gap_bound` is the additive gap between the tracked and the ideal
average backlog: D times the summed long-run arrival rates of every entry
queue (both legs for bidirectional scenarios).

`composite_bound_terms` evaluates, at finite T, the per-queue correction terms
built from the empty-queue statistics d and e. These are diagnostics only.
"""

from fractions import Fraction
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from dtsim.analysis.metrics import BEYOND_HORIZON, empty_times
from dtsim.models.trace import LegTrace, Trace
from dtsim.schemas.common import Direction, Rational
from dtsim.schemas.scenario import ScenarioConfig
from dtsim.schemas.validation import arrival_rate_upper_bound


def theorem_gap_bound(cfg: ScenarioConfig) -> Fraction:
    total = Fraction(0)
    for leg in cfg.legs():
        arrivals, _, _ = cfg.entries_for(leg.direction)
        total += sum((arrival_rate_upper_bound(entry.spec) for entry in arrivals), Fraction(0))
    return cfg.D * total


class BoundTerms(BaseModel):
    direction: Direction
    queue: str
    average: Rational
    arrival_term: Rational
    bootstrap_term: Rational
    emptying_term: Rational

    @property
    def correction(self) -> Fraction:
        return self.arrival_term - self.bootstrap_term - self.emptying_term


def _wait(d: np.ndarray, t: int, horizon: int) -> int:
    # a queue that never empties again waits at least until the horizon
    return horizon - t if d[t] == BEYOND_HORIZON else int(d[t])


def _transmitter_terms(leg: LegTrace) -> List[BoundTerms]:
    T, D = leg.horizon, leg.delay
    info = leg.leg
    out = []
    for node in range(info.n_tx):
        for k in range(info.n_classes):
            q = leg.q_tx[:T, node, k]
            a = leg.arrivals[:, node, k]
            d, e = empty_times(q)
            arrival = sum(min(D, _wait(d, t, T)) * int(a[t]) for t in range(D, T))
            emptying = sum(
                _wait(d, t, T) * int(a[t - D]) for t in range(D, T) if e[t] <= D
            )
            served_early = int(leg.served_out[:D, node, k].sum())
            bootstrap = served_early * _wait(d, D, T) if D < T else 0
            out.append(
                BoundTerms(
                    direction=info.direction,
                    queue=f"{info.tx_label}{node + 1}.k{k + 1}",
                    average=Fraction(int(q.sum()), T),
                    arrival_term=Fraction(arrival, T),
                    bootstrap_term=Fraction(bootstrap, T),
                    emptying_term=Fraction(emptying, T),
                )
            )
    return out


def _receiver_terms(leg: LegTrace) -> List[BoundTerms]:
    T, D = leg.horizon, leg.delay
    info = leg.leg
    out = []
    for node in range(info.n_rx):
        for k in range(info.n_classes):
            q = leg.q_rx[:, node, k]
            d, _ = empty_times(q[:T])
            inflow = leg.served_in[:D, node, k]
            if info.direction == Direction.DOWNLINK:
                # realized service: q + inflow - q_next
                drained = q[:D] + inflow - q[1 : D + 1]
            else:
                drained = leg.served_sink[:D, node, k]
            net = int((inflow - drained).sum())
            bootstrap = net * _wait(d, D, T) if D < T else 0
            out.append(
                BoundTerms(
                    direction=info.direction,
                    queue=f"{info.rx_label}{node + 1}.k{k + 1}",
                    average=Fraction(int(q[:T].sum()), T),
                    arrival_term=Fraction(0),
                    bootstrap_term=Fraction(-bootstrap, T),
                    emptying_term=Fraction(0),
                )
            )
    return out


def composite_bound_terms(trace: Trace, direction: Optional[Direction] = None) -> List[BoundTerms]:
    """Finite-horizon correction terms per queue.

    Transmitter queues: arrival term sum_{t>=D} min(D, d(t)) A(t) / T, bootstrap
    term (packets served before D) * d(D) / T and emptying term
    sum_{t>=D, e(t)<=D} d(t) A(t-D) / T. Receiver queues: the net inflow of the
    first D slots times d(D) / T, stored negated in `bootstrap_term` so that
    `correction` adds it.
    """
    legs = trace.legs.values() if direction is None else [trace.leg(direction)]
    terms: List[BoundTerms] = []
    for leg in legs:
        terms += _transmitter_terms(leg)
        terms += _receiver_terms(leg)
    return terms
