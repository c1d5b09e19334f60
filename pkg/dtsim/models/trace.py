# models/trace.py

import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

import numpy as np

from dtsim.models.state import Action, QueueState
from dtsim.schemas.common import ControllerMode, Direction
from dtsim.schemas.scenario import Leg


@dataclass(frozen=True)
class SlotRecord:
    """Everything that happened on one leg during slot t."""

    t: int
    a: np.ndarray
    c: np.ndarray
    b: Optional[np.ndarray]
    q_before: QueueState
    q_emulated: Optional[QueueState]
    q_observed: Optional[np.ndarray]
    f_requested: Action
    f_served: Action


@dataclass
class LegTrace:
    """Per-leg trace.

    The dense arrays always cover the whole horizon; `records` holds at most
    the configured number of slot records and the rest live in `spill_path`.
    Row T of `q_tx`/`q_rx` is the state after the last slot.
    """

    leg: Leg
    horizon: int
    delay: int
    mode: ControllerMode
    q_tx: np.ndarray
    q_rx: np.ndarray
    arrivals: np.ndarray
    served_out: np.ndarray
    served_in: np.ndarray
    served_sink: np.ndarray
    services: Optional[np.ndarray] = None
    qe_tx: Optional[np.ndarray] = None
    qe_rx: Optional[np.ndarray] = None
    records: List[SlotRecord] = field(default_factory=list)
    spill_path: Optional[str] = None

    @property
    def direction(self) -> Direction:
        return self.leg.direction

    @property
    def has_emulated(self) -> bool:
        return self.qe_tx is not None

    def backlog_tx(self) -> np.ndarray:
        return self.q_tx[: self.horizon]

    def backlog_rx(self) -> np.ndarray:
        return self.q_rx[: self.horizon]

    def total_backlog(self) -> np.ndarray:
        """Total backlog per slot, shape (T,)."""
        return self.backlog_tx().sum(axis=(1, 2)) + self.backlog_rx().sum(axis=(1, 2))

    def emulated_at(self, t: int) -> Optional[QueueState]:
        """Emulated state the controller decided on at slot t, i.e. Q^e(t - D)."""
        if not self.has_emulated or t < self.delay:
            return None
        return QueueState(self.qe_tx[t], self.qe_rx[t])

    def release(self) -> None:
        """Delete the spill file; spilled records are gone afterwards."""
        if self.spill_path is not None and os.path.exists(self.spill_path):
            os.remove(self.spill_path)
        self.spill_path = None


@dataclass
class Trace:
    config_hash: str
    replication: int
    mode: ControllerMode
    delay: int
    horizon: int
    legs: Dict[Direction, LegTrace]

    def leg(self, direction: Direction) -> LegTrace:
        return self.legs[Direction(direction)]

    @property
    def primary(self) -> LegTrace:
        """The only leg of a single-direction trace."""
        if len(self.legs) != 1:
            raise ValueError("bidirectional trace: select a leg with trace.leg(direction)")
        return next(iter(self.legs.values()))

    @property
    def records(self) -> List[SlotRecord]:
        return self.primary.records

    def total_backlog(self) -> np.ndarray:
        return sum(leg.total_backlog() for leg in self.legs.values())

    def release(self) -> None:
        for leg in self.legs.values():
            leg.release()

    def __enter__(self) -> "Trace":
        return self

    def __exit__(self, *exc) -> None:
        self.release()


def release_traces(traces: Iterable[Trace]) -> None:
    for trace in traces:
        trace.release()
