"""
The slotted simulation loop.

Within a slot: arrivals land, every leg's controller decides (uplink before
downlink), requested transfers are clipped to real availability and executed,
then sink transfers (uplink) or services (downlink) execute.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from dtsim.controllers import SlotInputs, build_controller
from dtsim.controllers.base import LegContext, sink_request
from dtsim.controllers.observation import ObservationChannel
from dtsim.core.audit import RunAuditor
from dtsim.core.config import settings
from dtsim.core.exceptions import ConfigError, InvariantViolation
from dtsim.engine.dynamics import clip_action, step_real_downlink, step_real_uplink
from dtsim.engine.recorder import LegRecorder
from dtsim.models.state import Action, QueueState
from dtsim.models.trace import SlotRecord, Trace
from dtsim.processes import (
    ARRIVALS,
    CHANNELS,
    SERVICES,
    RandomStream,
    build_grid,
    grid_words,
    sample_arrivals,
    sample_channels,
    sample_service,
    stream_id,
)
from dtsim.schemas.common import Direction
from dtsim.schemas.scenario import Leg, ScenarioConfig
from dtsim.schemas.validation import validate_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StreamOffsets:
    """Slot offsets applied when indexing the process streams.

    A run with `channels=D` sees C'(t) = C(t + D). `service_lead` shifts only
    the services reported to the controller: the B(t - D) it observes at slot t
    is then the service the real receivers apply at slot t - D + service_lead.
    """

    arrivals: int = 0
    channels: int = 0
    services: int = 0
    service_lead: int = 0


class LegProcesses:
    """Arrival, channel and service realizations for one leg."""

    def __init__(self, cfg: ScenarioConfig, leg: Leg, replication: int, offsets: StreamOffsets):
        self.leg = leg
        self.offsets = offsets
        arrivals, channels, services = cfg.entries_for(leg.direction)
        self.arrival_grid = build_grid(arrivals, leg.n_tx, leg.n_classes, lambda e: e.node, lambda e: e.klass)
        self.channel_grid = build_grid(channels, leg.n_tx, leg.n_rx, lambda e: e.transmitter, lambda e: e.receiver)
        self.service_grid = None
        if leg.direction == Direction.DOWNLINK:
            self.service_grid = build_grid(
                services, leg.n_rx, leg.n_classes, lambda e: e.receiver, lambda e: e.klass
            )

        def stream(process: int, grid) -> RandomStream:
            return RandomStream(cfg.seed, replication, stream_id(leg.code, process), grid_words(grid))

        self._arrivals = stream(ARRIVALS, self.arrival_grid)
        self._channels = stream(CHANNELS, self.channel_grid)
        self._services = stream(SERVICES, self.service_grid) if self.service_grid is not None else None

    def arrivals(self, t: int) -> np.ndarray:
        return sample_arrivals(self.arrival_grid, t + self.offsets.arrivals, self._arrivals)

    def channels(self, t: int) -> np.ndarray:
        return sample_channels(self.channel_grid, t + self.offsets.channels, self._channels)

    def services(self, t: int) -> Optional[np.ndarray]:
        if self._services is None:
            return None
        return sample_service(self.service_grid, t + self.offsets.services, self._services)

    def reported_services(self, t: int, actual: Optional[np.ndarray]) -> Optional[np.ndarray]:
        if self._services is None or self.offsets.service_lead == 0:
            return actual
        return sample_service(self.service_grid, t + self.offsets.services + self.offsets.service_lead, self._services)


def _execute(
    ctx: LegContext,
    state: QueueState,
    a: np.ndarray,
    b: Optional[np.ndarray],
    action: Action,
):
    # sink transfers act on the receiver's own real queue
    requested = Action(action.f_link, sink_request(ctx))
    served = clip_action(requested, state, a, sink_sees_inflow=ctx.sink_sees_inflow)
    if ctx.uplink:
        after = step_real_uplink(state, a, served)
    else:
        after = step_real_downlink(state, a, served, b)
    return requested, served, after


def _simulate(cfg: ScenarioConfig, replication: int, offsets: StreamOffsets) -> Trace:
    legs = cfg.legs()
    states: Dict[Direction, QueueState] = {
        leg.direction: QueueState.zeros(leg.n_tx, leg.n_rx, leg.n_classes) for leg in legs
    }
    processes = {leg.direction: LegProcesses(cfg, leg, replication, offsets) for leg in legs}
    channels = {leg.direction: ObservationChannel(leg, cfg.D) for leg in legs}
    contexts = {
        leg.direction: LegContext.build(leg, cfg.policy_for(leg.direction), cfg.bootstrap, cfg.D) for leg in legs
    }
    recorders = {leg.direction: LegRecorder(leg, cfg.T, cfg.D, cfg.controller) for leg in legs}
    controller = build_controller(cfg, states)

    try:
        for t in range(cfg.T):
            try:
                samples = {}
                inputs = {}
                for leg in legs:
                    d = leg.direction
                    proc = processes[d]
                    a, c, b = proc.arrivals(t), proc.channels(t), proc.services(t)
                    channels[d].push(t, a, proc.reported_services(t, b), states[d])
                    samples[d] = (a, c, b)
                    inputs[d] = SlotInputs(t=t, real=states[d], a_now=a, c_now=c, channel=channels[d])

                decisions = controller.decide_slot(inputs)

                for leg in legs:
                    d = leg.direction
                    a, c, b = samples[d]
                    decision = decisions[d]
                    requested, served, after = _execute(contexts[d], states[d], a, b, decision.action)
                    recorders[d].record(
                        SlotRecord(
                            t=t,
                            a=a,
                            c=c,
                            b=b,
                            q_before=states[d],
                            q_emulated=decision.q_emulated,
                            q_observed=decision.q_observed,
                            f_requested=requested,
                            f_served=served,
                        )
                    )
                    states[d] = after
            except InvariantViolation as e:
                raise e.at_slot(t)
    except BaseException:
        # Hapus file spill kalau run gagal
        for recorder in recorders.values():
            recorder.close(discard=True)
        raise

    leg_traces = {d: recorders[d].finish(states[d]) for d in recorders}
    return Trace(
        config_hash=cfg.config_hash(),
        replication=replication,
        mode=cfg.controller,
        delay=cfg.D,
        horizon=cfg.T,
        legs=leg_traces,
    )


def run(cfg: ScenarioConfig, replication: int = 0, offsets: Optional[StreamOffsets] = None) -> Trace:
    """Execute T slots of one replication; deterministic in (cfg, replication, offsets)."""
    report = validate_config(cfg)
    if not report.ok:
        raise ConfigError("scenario failed validation", report.violations)
    offsets = offsets or StreamOffsets()

    auditor = RunAuditor()
    with auditor.track(
        config_hash=cfg.config_hash(),
        mode=cfg.controller.value,
        delay=cfg.D,
        horizon=cfg.T,
        replication=replication,
    ) as extra:
        trace = _simulate(cfg, replication, offsets)
        extra["final_backlog"] = int(trace.total_backlog()[-1])
    logger.debug("run %s rep %d finished", trace.config_hash, replication)
    return trace


def _run_one(args) -> Trace:
    cfg, replication = args
    return run(cfg, replication)


def run_replications(cfg: ScenarioConfig, workers: Optional[int] = None) -> List[Trace]:
    """One trace per replication, in replication order."""
    workers = settings.DTSIM_WORKERS if workers is None else workers
    jobs = [(cfg, r) for r in range(cfg.replications)]
    if workers <= 1 or len(jobs) == 1:
        return [_run_one(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs))
