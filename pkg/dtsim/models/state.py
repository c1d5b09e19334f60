# models/state.py

from dataclasses import dataclass
from typing import Optional

import numpy as np

from dtsim.core.exceptions import InvariantViolation

# Service value meaning "serve everything buffered". Large enough that
# [Q + inflow - CLEAR_ALL]^+ is always 0, small enough to stay exact in int64.
CLEAR_ALL = 2**62


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=np.int64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class QueueState:
    """Backlogs at a slot boundary.

    q_tx is indexed (transmitter, class) and q_rx is indexed (receiver, class).
    Uplink transmitters hold Q_jk and receivers Q_ik; downlink transmitters
    hold Q_ik and receivers Q_jk.
    """

    q_tx: np.ndarray
    q_rx: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "q_tx", _frozen(self.q_tx))
        object.__setattr__(self, "q_rx", _frozen(self.q_rx))

    @classmethod
    def zeros(cls, n_tx: int, n_rx: int, n_classes: int) -> "QueueState":
        return cls(np.zeros((n_tx, n_classes), np.int64), np.zeros((n_rx, n_classes), np.int64))

    def total(self) -> int:
        return int(self.q_tx.sum() + self.q_rx.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QueueState):
            return NotImplemented
        return np.array_equal(self.q_tx, other.q_tx) and np.array_equal(self.q_rx, other.q_rx)

    __hash__ = None


# Real and ideal systems share the shape.
SystemState = QueueState


@dataclass(frozen=True)
class EmulatedState:
    """Controller-side replica Q^e at emulated time `t_emulated` (= real time - lag)."""

    lag: int
    t_emulated: int
    q: QueueState


@dataclass(frozen=True)
class Action:
    """Requested (or served) transfers for one slot.

    f_link is indexed (transmitter, receiver, class); f_sink is indexed
    (receiver, class) and is only used on uplink legs.
    """

    f_link: np.ndarray
    f_sink: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "f_link", _frozen(self.f_link))
        object.__setattr__(self, "f_sink", _frozen(self.f_sink))
        if (self.f_link < 0).any() or (self.f_sink < 0).any():
            raise InvariantViolation("actions must be non-negative")

    @classmethod
    def zeros(cls, n_tx: int, n_rx: int, n_classes: int) -> "Action":
        return cls(np.zeros((n_tx, n_rx, n_classes), np.int64), np.zeros((n_rx, n_classes), np.int64))

    def outflow(self) -> np.ndarray:
        """Per transmitter queue: sum over receivers."""
        return self.f_link.sum(axis=1)

    def inflow(self) -> np.ndarray:
        """Per receiver queue: sum over transmitters."""
        return self.f_link.sum(axis=0)

    def is_zero(self) -> bool:
        return not self.f_link.any() and not self.f_sink.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Action):
            return NotImplemented
        return np.array_equal(self.f_link, other.f_link) and np.array_equal(self.f_sink, other.f_sink)

    __hash__ = None


# F~ has the same shape as F; served <= requested is checked by the engine.
ClippedAction = Action


@dataclass(frozen=True)
class Observation:
    """What a controller knows when it decides at slot t."""

    t: int
    c_now: np.ndarray
    a_delayed: Optional[np.ndarray] = None
    b_delayed: Optional[np.ndarray] = None
    q_stale: Optional[QueueState] = None


@dataclass(frozen=True)
class PartialView:
    """Backlog view assembled from cyclic polling before the first delayed report.

    Remote rows that have never been polled are zero and listed in neither
    `known_tx` nor `known_rx`.
    """

    sender: np.ndarray
    receiver: np.ndarray
    known_tx: tuple = ()
    known_rx: tuple = ()

    @property
    def delivered(self) -> bool:
        return bool(self.known_tx or self.known_rx)
