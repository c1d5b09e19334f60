from dtsim.controllers.base import Decision, LegContext, LegController, SlotInputs, policy_request
from dtsim.controllers.bootstrap import bootstrap_decide
from dtsim.core.exceptions import InvariantViolation
from dtsim.models.state import Action, Observation
from dtsim.schemas.common import BootstrapMode, ControllerMode


def naive_decide(obs: Observation, ctx: LegContext) -> Action:
    """pi(Q(t-D) + A(t-D), C(t)) on the stale real state."""
    if obs.q_stale is None or obs.a_delayed is None:
        raise InvariantViolation("naive control needs Q(t-D) and A(t-D)")
    return policy_request(ctx, obs.q_stale, obs.a_delayed, obs.c_now)


class NaiveController(LegController):
    mode = ControllerMode.NAIVE

    def decide(self, inputs: SlotInputs) -> Decision:
        if inputs.t < self.ctx.delay:
            partial = None
            if self.ctx.bootstrap == BootstrapMode.ACT_ON_AVAILABLE:
                partial = inputs.channel.partial_view(inputs.t, inputs.real, inputs.a_now)
            action = bootstrap_decide(self.ctx.bootstrap, partial, self.ctx, inputs.c_now)
            return Decision(action=action)
        obs = inputs.channel.observe(inputs.t, inputs.c_now, include_state=True)
        return Decision(
            action=naive_decide(obs, self.ctx),
            q_observed=obs.q_stale.q_tx + obs.a_delayed,
        )
