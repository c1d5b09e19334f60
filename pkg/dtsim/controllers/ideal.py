import numpy as np

from dtsim.controllers.base import Decision, LegContext, LegController, SlotInputs, policy_request
from dtsim.models.state import Action, QueueState
from dtsim.schemas.common import ControllerMode


def ideal_decide(state: QueueState, a_now: np.ndarray, c_now: np.ndarray, ctx: LegContext) -> Action:
    """pi(Q(t) + A(t), C(t)) with instantaneous state."""
    return policy_request(ctx, state, a_now, c_now)


class IdealController(LegController):
    mode = ControllerMode.IDEAL

    def decide(self, inputs: SlotInputs) -> Decision:
        action = ideal_decide(inputs.real, inputs.a_now, inputs.c_now, self.ctx)
        return Decision(action=action, q_observed=inputs.real.q_tx + inputs.a_now)
