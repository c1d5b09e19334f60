# controllers/base.py

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from dtsim.controllers.observation import ObservationChannel
from dtsim.engine.dynamics import clip_action
from dtsim.models.state import CLEAR_ALL, Action, QueueState
from dtsim.policies import SchedulingPolicy, get_policy
from dtsim.schemas.common import BootstrapMode, ControllerMode, Direction
from dtsim.schemas.scenario import Leg


@dataclass(frozen=True)
class LegContext:
    """Static per-leg decision parameters."""

    leg: Leg
    policy: SchedulingPolicy
    bootstrap: BootstrapMode
    delay: int
    sink_rate: Optional[int] = None
    sink_sees_inflow: bool = True

    @classmethod
    def build(cls, leg: Leg, policy_spec, bootstrap: BootstrapMode, delay: int) -> "LegContext":
        return cls(
            leg=leg,
            policy=get_policy(policy_spec),
            bootstrap=bootstrap,
            delay=delay,
            sink_rate=policy_spec.sink_rate,
            sink_sees_inflow=policy_spec.sink_sees_inflow,
        )

    @property
    def uplink(self) -> bool:
        return self.leg.direction == Direction.UPLINK

    def zero_action(self) -> Action:
        return Action.zeros(self.leg.n_tx, self.leg.n_rx, self.leg.n_classes)


@dataclass(frozen=True)
class SlotInputs:
    """What the engine hands a leg controller at slot t."""

    t: int
    real: QueueState
    a_now: np.ndarray
    c_now: np.ndarray
    channel: ObservationChannel


@dataclass(frozen=True)
class Decision:
    action: Action
    q_emulated: Optional[QueueState] = None
    q_observed: Optional[np.ndarray] = None


def sink_request(ctx: LegContext) -> np.ndarray:
    shape = (ctx.leg.n_rx, ctx.leg.n_classes)
    if not ctx.uplink:
        return np.zeros(shape, dtype=np.int64)
    rate = CLEAR_ALL if ctx.sink_rate is None else ctx.sink_rate
    return np.full(shape, rate, dtype=np.int64)


def policy_request(ctx: LegContext, view: QueueState, a: np.ndarray, c: np.ndarray) -> Action:
    """pi(view + a, c) as issued; the engine clips it against the real queues."""
    f_link = ctx.policy(view.q_tx + a, view.q_rx, c)
    return Action(f_link, sink_request(ctx))


def policy_action(ctx: LegContext, view: QueueState, a: np.ndarray, c: np.ndarray) -> Action:
    """policy_request clipped to what `view + a` makes available."""
    requested = policy_request(ctx, view, a, c)
    return clip_action(requested, view, a, sink_sees_inflow=ctx.sink_sees_inflow)


class LegController(ABC):
    mode: ControllerMode

    def __init__(self, ctx: LegContext):
        self.ctx = ctx

    @abstractmethod
    def decide(self, inputs: SlotInputs) -> Decision:
        ...
