"""
Exact per-seed coupling checks between the real, emulated and ideal systems.

All checks assume tracking control with the Idle bootstrap and return the
list of mismatches; an empty list means the identity held at every slot.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List

import numpy as np
from pydantic import BaseModel

from dtsim.core.exceptions import UsageError
from dtsim.engine.simulator import StreamOffsets, run
from dtsim.models.trace import LegTrace, Trace
from dtsim.schemas.common import BootstrapMode, ControllerMode, Direction
from dtsim.schemas.scenario import ScenarioConfig


class CouplingViolation(BaseModel):
    check: str
    direction: Direction
    slot: int
    queue: str
    expected: int
    actual: int

    def __str__(self) -> str:
        return (
            f"{self.check} [{self.direction.value}] slot {self.slot} {self.queue}: "
            f"expected {self.expected}, got {self.actual}"
        )


def _tracked_legs(trace: Trace) -> Iterable[LegTrace]:
    for leg in trace.legs.values():
        if not leg.has_emulated:
            raise UsageError("coupling checks need a tracking-control trace")
        yield leg


def _compare(
    check: str,
    leg: LegTrace,
    label: str,
    slot: int,
    expected: np.ndarray,
    actual: np.ndarray,
    dominated: bool = False,
) -> List[CouplingViolation]:
    bad = actual > expected if dominated else actual != expected
    out = []
    for node, k in zip(*np.nonzero(bad)):
        out.append(
            CouplingViolation(
                check=check,
                direction=leg.direction,
                slot=slot,
                queue=f"{label}{node + 1}.k{k + 1}",
                expected=int(expected[node, k]),
                actual=int(actual[node, k]),
            )
        )
    return out


def check_real_emulated_gap(trace: Trace) -> List[CouplingViolation]:
    """Q_tx(t) = Q^e_tx(t-D) + sum of A over [t-D, t), for D <= t < T."""
    violations = []
    for leg in _tracked_legs(trace):
        D = leg.delay
        for t in range(D, leg.horizon):
            expected = leg.qe_tx[t] + leg.arrivals[t - D : t].sum(axis=0)
            violations += _compare("real-emulated gap", leg, leg.leg.tx_label, t, expected, leg.q_tx[t])
    return violations


def check_receiver_identity(trace: Trace) -> List[CouplingViolation]:
    """Uplink receivers: Q_rx(t) = Q^e_rx(t-D), for D <= t < T."""
    violations = []
    for leg in _tracked_legs(trace):
        if leg.direction != Direction.UPLINK:
            continue
        for t in range(leg.delay, leg.horizon):
            violations += _compare("receiver identity", leg, leg.leg.rx_label, t, leg.qe_rx[t], leg.q_rx[t])
    return violations


def check_emulated_ideal(tracked: Trace, ideal: Trace) -> List[CouplingViolation]:
    """Q^e(w) = Q^ideal(w) for 0 <= w <= T-D-1.

    `ideal` must run on the channel stream shifted forward by D (and on the
    service stream the emulator observed).
    """
    violations = []
    for leg in _tracked_legs(tracked):
        other = ideal.leg(leg.direction)
        D = leg.delay
        for w in range(0, leg.horizon - D):
            violations += _compare("emulated-ideal", leg, leg.leg.tx_label, w, other.q_tx[w], leg.qe_tx[w + D])
            violations += _compare("emulated-ideal", leg, leg.leg.rx_label, w, other.q_rx[w], leg.qe_rx[w + D])
    return violations


def check_downlink_domination(trace: Trace) -> List[CouplingViolation]:
    """Downlink receivers: Q_rx(t) <= Q^e_rx(t-D), for D <= t < T."""
    violations = []
    for leg in _tracked_legs(trace):
        if leg.direction != Direction.DOWNLINK:
            continue
        for t in range(leg.delay, leg.horizon):
            violations += _compare(
                "downlink domination", leg, leg.leg.rx_label, t, leg.qe_rx[t], leg.q_rx[t], dominated=True
            )
    return violations


def _receiver_average_gaps(tracked: Trace, ideal: Trace, direction: Direction):
    """(real average over [D, T), ideal average over [0, T-D)) per receiver queue."""
    if direction not in tracked.legs:
        return
    leg = tracked.leg(direction)
    other = ideal.leg(direction)
    D, T = leg.delay, leg.horizon
    real = leg.q_rx[D:T].sum(axis=0)
    reference = other.q_rx[0 : T - D].sum(axis=0)
    for node in range(real.shape[0]):
        for k in range(real.shape[1]):
            yield leg, node, k, Fraction(int(real[node, k]), T - D), Fraction(int(reference[node, k]), T - D)


def check_receiver_average_identity(tracked: Trace, ideal: Trace) -> List[CouplingViolation]:
    """Uplink receivers: average over [D, T) of the real queue equals the ideal average over [0, T-D).

    Averages share a denominator, so the violation reports the slot sums.
    """
    out = []
    for leg, node, k, real, reference in _receiver_average_gaps(tracked, ideal, Direction.UPLINK):
        if real != reference:
            span = leg.horizon - leg.delay
            out.append(
                CouplingViolation(
                    check="receiver average identity",
                    direction=leg.direction,
                    slot=leg.delay,
                    queue=f"{leg.leg.rx_label}{node + 1}.k{k + 1}",
                    expected=int(reference * span),
                    actual=int(real * span),
                )
            )
    return out


def check_downlink_receiver_average(tracked: Trace, ideal: Trace) -> List[CouplingViolation]:
    """Downlink receivers: real average over [D, T) <= ideal average over [0, T-D)."""
    out = []
    for leg, node, k, real, reference in _receiver_average_gaps(tracked, ideal, Direction.DOWNLINK):
        if real > reference:
            span = leg.horizon - leg.delay
            out.append(
                CouplingViolation(
                    check="downlink receiver average",
                    direction=leg.direction,
                    slot=leg.delay,
                    queue=f"{leg.leg.rx_label}{node + 1}.k{k + 1}",
                    expected=int(reference * span),
                    actual=int(real * span),
                )
            )
    return out


@dataclass(frozen=True)
class CoupledRuns:
    """A tracking run and the ideal run it is coupled with.

    With `shifted_service` the emulator observes the service the real
    receivers apply D slots later, and the ideal run uses that same shifted
    service sequence.
    """

    tracked: Trace
    ideal: Trace
    shifted_service: bool


def run_coupled(cfg: ScenarioConfig, replication: int = 0, shifted_service: bool = False) -> CoupledRuns:
    if cfg.bootstrap != BootstrapMode.IDLE:
        raise UsageError("coupled runs need the idle bootstrap")
    D = cfg.D
    tracked_cfg = cfg.replace(controller=ControllerMode.UT)
    ideal_cfg = cfg.replace(controller=ControllerMode.IDEAL)
    if shifted_service:
        tracked = run(tracked_cfg, replication, StreamOffsets(service_lead=D))
        ideal = run(ideal_cfg, replication, StreamOffsets(channels=D, services=D))
    else:
        tracked = run(tracked_cfg, replication)
        ideal = run(ideal_cfg, replication, StreamOffsets(channels=D))
    return CoupledRuns(tracked=tracked, ideal=ideal, shifted_service=shifted_service)


def all_coupling_violations(runs: CoupledRuns) -> List[CouplingViolation]:
    """Every applicable check on a coupled pair."""
    violations = check_real_emulated_gap(runs.tracked)
    violations += check_receiver_identity(runs.tracked)
    violations += check_emulated_ideal(runs.tracked, runs.ideal)
    violations += check_receiver_average_identity(runs.tracked, runs.ideal)
    if runs.shifted_service:
        violations += check_downlink_domination(runs.tracked)
        violations += check_downlink_receiver_average(runs.tracked, runs.ideal)
    return violations
