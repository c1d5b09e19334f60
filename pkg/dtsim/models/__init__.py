from dtsim.models.state import (
    CLEAR_ALL,
    Action,
    ClippedAction,
    EmulatedState,
    Observation,
    PartialView,
    QueueState,
    SystemState,
)
from dtsim.models.trace import LegTrace, SlotRecord, Trace, release_traces

__all__ = [
    "CLEAR_ALL",
    "Action",
    "ClippedAction",
    "EmulatedState",
    "Observation",
    "PartialView",
    "QueueState",
    "SystemState",
    "LegTrace",
    "SlotRecord",
    "Trace",
    "release_traces",
]
