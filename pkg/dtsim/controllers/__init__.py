"""
Decision modes: ideal (instantaneous state), naive (stale state) and
universal tracking (emulated state).
"""

from typing import Dict, Union

from dtsim.controllers.base import Decision, LegContext, LegController, SlotInputs, policy_action, policy_request
from dtsim.controllers.bidirectional import BidirectionalController, SingleLegController, bidirectional_step
from dtsim.controllers.bootstrap import bootstrap_decide
from dtsim.controllers.ideal import IdealController, ideal_decide
from dtsim.controllers.naive import NaiveController, naive_decide
from dtsim.controllers.observation import ObservationChannel
from dtsim.controllers.tracking import TrackingController, ut_decide, ut_update_emulated
from dtsim.models.state import QueueState
from dtsim.schemas.common import ControllerMode, Direction
from dtsim.schemas.scenario import ScenarioConfig

ScenarioController = Union[SingleLegController, BidirectionalController]


def build_leg_controller(mode: ControllerMode, ctx: LegContext, initial: QueueState) -> LegController:
    if mode == ControllerMode.IDEAL:
        return IdealController(ctx)
    if mode == ControllerMode.NAIVE:
        return NaiveController(ctx)
    return TrackingController(ctx, initial)


def build_controller(cfg: ScenarioConfig, initial: Dict[Direction, QueueState]) -> ScenarioController:
    controllers = {}
    for leg in cfg.legs():
        ctx = LegContext.build(leg, cfg.policy_for(leg.direction), cfg.bootstrap, cfg.D)
        controllers[leg.direction] = build_leg_controller(cfg.controller, ctx, initial[leg.direction])
    if cfg.is_bidirectional:
        return BidirectionalController(controllers)
    (direction, controller), = controllers.items()
    return SingleLegController(direction, controller)


__all__ = [
    "Decision",
    "LegContext",
    "LegController",
    "SlotInputs",
    "policy_action",
    "policy_request",
    "ObservationChannel",
    "bootstrap_decide",
    "ideal_decide",
    "naive_decide",
    "ut_decide",
    "ut_update_emulated",
    "bidirectional_step",
    "IdealController",
    "NaiveController",
    "TrackingController",
    "BidirectionalController",
    "SingleLegController",
    "build_controller",
]
