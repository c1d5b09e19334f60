"""
Universal tracking: decide on an emulated copy of the ideal system that lags
real time by D slots, then advance it with the delayed arrivals (and, on
downlink legs, delayed services) plus the action just issued.
"""

from typing import Optional

import numpy as np

from dtsim.controllers.base import Decision, LegContext, LegController, SlotInputs, policy_action
from dtsim.controllers.bootstrap import bootstrap_decide
from dtsim.core.exceptions import InvariantViolation
from dtsim.models.state import Action, EmulatedState, Observation, QueueState
from dtsim.schemas.common import BootstrapMode, ControllerMode


def ut_decide(emu: EmulatedState, obs: Observation, ctx: LegContext) -> Action:
    """pi(Q^e(t-D) + A(t-D), C(t)), clipped to emulated availability."""
    if obs.a_delayed is None:
        raise InvariantViolation("tracking control needs A(t-D)")
    return policy_action(ctx, emu.q, obs.a_delayed, obs.c_now)


def ut_update_emulated(
    emu: EmulatedState,
    a_delayed: np.ndarray,
    f: Action,
    b_delayed: Optional[np.ndarray],
    ctx: LegContext,
) -> EmulatedState:
    q_tx = emu.q.q_tx + a_delayed - f.outflow()
    if (q_tx < 0).any():
        raise InvariantViolation("emulated transmitter backlog went negative")
    if ctx.uplink:
        q_rx = emu.q.q_rx + f.inflow() - f.f_sink
        if (q_rx < 0).any():
            raise InvariantViolation("emulated receiver backlog went negative")
    else:
        if b_delayed is None:
            raise InvariantViolation("downlink tracking needs B(t-D)")
        q_rx = np.maximum(emu.q.q_rx + f.inflow() - b_delayed, 0)
    return EmulatedState(lag=emu.lag, t_emulated=emu.t_emulated + 1, q=QueueState(q_tx, q_rx))


class TrackingController(LegController):
    mode = ControllerMode.UT

    def __init__(self, ctx: LegContext, initial: QueueState):
        super().__init__(ctx)
        self.emulated = EmulatedState(lag=ctx.delay, t_emulated=0, q=initial)

    def bootstrap(self, inputs: SlotInputs) -> Decision:
        partial = None
        if self.ctx.bootstrap == BootstrapMode.ACT_ON_AVAILABLE:
            partial = inputs.channel.partial_view(inputs.t, inputs.real, inputs.a_now)
        return Decision(action=bootstrap_decide(self.ctx.bootstrap, partial, self.ctx, inputs.c_now))

    def observe(self, inputs: SlotInputs) -> Observation:
        return inputs.channel.observe(inputs.t, inputs.c_now)

    def decide(self, inputs: SlotInputs) -> Decision:
        if inputs.t < self.ctx.delay:
            return self.bootstrap(inputs)
        obs = self.observe(inputs)
        current = self.emulated
        action = ut_decide(current, obs, self.ctx)
        self.emulated = ut_update_emulated(current, obs.a_delayed, action, obs.b_delayed, self.ctx)
        return Decision(action=action, q_emulated=current.q, q_observed=current.q.q_tx + obs.a_delayed)
