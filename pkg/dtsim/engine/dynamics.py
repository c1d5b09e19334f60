"""
Per-slot queue dynamics.

Uplink:   Q_jk <- [Q_jk + A_jk - sum_i F~_jik]^+,  Q_ik <- [Q_ik + sum_j F~_jik - F~_isk]^+
Downlink: Q_ik <- [Q_ik + A_ik - sum_j F~_ijk]^+,  Q_jk <- [Q_jk + sum_i F~_ijk - B_jsk]^+

With clipped actions only the downlink receiver clamp can bind; the other
clamps are checked instead of applied.
"""

import numpy as np

from dtsim.core.exceptions import InvariantViolation
from dtsim.models.state import Action, QueueState


def clip_action(
    f: Action,
    state: QueueState,
    a_now: np.ndarray,
    sink_sees_inflow: bool = True,
) -> Action:
    """F~ = min(F, available), receivers served in ascending index per source queue."""
    available = state.q_tx + a_now
    requested = f.f_link
    cumulative = np.cumsum(requested, axis=1)
    capped = np.minimum(cumulative, available[:, None, :])
    capped = np.maximum(capped, 0)
    served = np.diff(capped, axis=1, prepend=0)

    sink_available = state.q_rx + served.sum(axis=0) if sink_sees_inflow else state.q_rx
    sink_served = np.minimum(f.f_sink, sink_available)
    return Action(served, sink_served)


def _checked(name: str, values: np.ndarray) -> np.ndarray:
    if (values < 0).any():
        raise InvariantViolation(f"{name} would go negative; action was not clipped")
    return values


def step_real_uplink(state: QueueState, a_now: np.ndarray, f_served: Action) -> QueueState:
    q_tx = _checked("transmitter backlog", state.q_tx + a_now - f_served.outflow())
    q_rx = _checked("receiver backlog", state.q_rx + f_served.inflow() - f_served.f_sink)
    return QueueState(q_tx, q_rx)


def step_real_downlink(
    state: QueueState, a_now: np.ndarray, f_served: Action, b_now: np.ndarray
) -> QueueState:
    q_tx = _checked("transmitter backlog", state.q_tx + a_now - f_served.outflow())
    # B is uncontrollable and may exceed the backlog
    q_rx = np.maximum(state.q_rx + f_served.inflow() - b_now, 0)
    return QueueState(q_tx, q_rx)
