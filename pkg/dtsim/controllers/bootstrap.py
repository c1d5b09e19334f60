from typing import Optional

import numpy as np

from dtsim.controllers.base import LegContext, policy_request
from dtsim.models.state import Action, PartialView, QueueState
from dtsim.schemas.common import BootstrapMode


def bootstrap_decide(
    mode: BootstrapMode,
    partial_info: Optional[PartialView],
    ctx: LegContext,
    c_now: np.ndarray,
) -> Action:
    """Action for t < D, before any delayed report exists."""
    if mode == BootstrapMode.IDLE or partial_info is None or not partial_info.delivered:
        return ctx.zero_action()
    view = QueueState(partial_info.sender, partial_info.receiver)
    return policy_request(ctx, view, np.zeros_like(partial_info.sender), c_now)
