"""
Slot dynamics and the simulation loop.

`run`, `run_replications` and `StreamOffsets` are resolved lazily: controllers
import the dynamics from here while the loop itself imports the controllers.
"""

from dtsim.engine.dynamics import clip_action, step_real_downlink, step_real_uplink

_LOOP_NAMES = ("run", "run_replications", "StreamOffsets")


def __getattr__(name):
    if name in _LOOP_NAMES:
        from dtsim.engine import simulator

        return getattr(simulator, name)
    raise AttributeError(f"module 'dtsim.engine' has no attribute {name!r}")


__all__ = [
    "clip_action",
    "step_real_downlink",
    "step_real_uplink",
    "run",
    "run_replications",
    "StreamOffsets",
]
