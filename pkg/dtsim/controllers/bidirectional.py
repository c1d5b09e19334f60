from typing import Dict, Tuple

from dtsim.controllers.base import Decision, LegController, SlotInputs
from dtsim.controllers.tracking import TrackingController, ut_decide, ut_update_emulated
from dtsim.models.state import Action, EmulatedState, Observation
from dtsim.schemas.common import Direction

ORDER = (Direction.UPLINK, Direction.DOWNLINK)


def bidirectional_step(
    emulated: Dict[Direction, EmulatedState],
    observations: Dict[Direction, Observation],
    contexts,
) -> Tuple[Dict[Direction, Action], Dict[Direction, EmulatedState]]:
    """Uplink tracking then downlink tracking on the shared slot clock.

    The two emulated systems never read each other.
    """
    actions: Dict[Direction, Action] = {}
    updated: Dict[Direction, EmulatedState] = {}
    for direction in ORDER:
        ctx = contexts[direction]
        obs = observations[direction]
        action = ut_decide(emulated[direction], obs, ctx)
        actions[direction] = action
        updated[direction] = ut_update_emulated(emulated[direction], obs.a_delayed, action, obs.b_delayed, ctx)
    return actions, updated


class BidirectionalController:
    """Drives one leg controller per direction, uplink first."""

    def __init__(self, controllers: Dict[Direction, LegController]):
        self.controllers = controllers

    def decide_slot(self, inputs: Dict[Direction, SlotInputs]) -> Dict[Direction, Decision]:
        tracking = all(isinstance(c, TrackingController) for c in self.controllers.values())
        t = inputs[Direction.UPLINK].t
        delay = self.controllers[Direction.UPLINK].ctx.delay
        if not tracking or t < delay:
            return {d: self.controllers[d].decide(inputs[d]) for d in ORDER}

        emulated = {d: self.controllers[d].emulated for d in ORDER}
        observations = {d: self.controllers[d].observe(inputs[d]) for d in ORDER}
        contexts = {d: self.controllers[d].ctx for d in ORDER}
        actions, updated = bidirectional_step(emulated, observations, contexts)

        decisions = {}
        for d in ORDER:
            self.controllers[d].emulated = updated[d]
            decisions[d] = Decision(
                action=actions[d],
                q_emulated=emulated[d].q,
                q_observed=emulated[d].q.q_tx + observations[d].a_delayed,
            )
        return decisions


class SingleLegController:
    def __init__(self, direction: Direction, controller: LegController):
        self.direction = direction
        self.controller = controller

    def decide_slot(self, inputs: Dict[Direction, SlotInputs]) -> Dict[Direction, Decision]:
        return {self.direction: self.controller.decide(inputs[self.direction])}
