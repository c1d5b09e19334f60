import csv
import logging
import os
import tempfile
from typing import List, Optional, TextIO

import numpy as np

from dtsim.core.config import settings
from dtsim.models.state import QueueState
from dtsim.models.trace import LegTrace, SlotRecord
from dtsim.schemas.common import ControllerMode, Direction
from dtsim.schemas.scenario import Leg
from dtsim.utils.export import leg_row

logger = logging.getLogger(__name__)


class LegRecorder:
    """Collects one leg's trace.

    Dense per-slot arrays are always kept. Slot records stay in memory up to
    `memory_cap`; later records are streamed to a CSV spill file in the
    trace CSV column layout.
    """

    def __init__(
        self,
        leg: Leg,
        horizon: int,
        delay: int,
        mode: ControllerMode,
        memory_cap: Optional[int] = None,
        spill_dir: Optional[str] = None,
    ):
        self.leg = leg
        self.horizon = horizon
        self.delay = delay
        self.mode = mode
        self.memory_cap = settings.DTSIM_TRACE_MEMORY_CAP if memory_cap is None else memory_cap
        self.spill_dir = spill_dir or settings.DTSIM_TRACE_SPILL_DIR

        n_tx, n_rx, K = leg.n_tx, leg.n_rx, leg.n_classes
        self.q_tx = np.zeros((horizon + 1, n_tx, K), dtype=np.int64)
        self.q_rx = np.zeros((horizon + 1, n_rx, K), dtype=np.int64)
        self.arrivals = np.zeros((horizon, n_tx, K), dtype=np.int64)
        self.served_out = np.zeros((horizon, n_tx, K), dtype=np.int64)
        self.served_in = np.zeros((horizon, n_rx, K), dtype=np.int64)
        self.served_sink = np.zeros((horizon, n_rx, K), dtype=np.int64)
        self.services = np.zeros((horizon, n_rx, K), dtype=np.int64) if leg.direction == Direction.DOWNLINK else None
        tracking = mode == ControllerMode.UT
        self.qe_tx = np.zeros((horizon, n_tx, K), dtype=np.int64) if tracking else None
        self.qe_rx = np.zeros((horizon, n_rx, K), dtype=np.int64) if tracking else None

        self.records: List[SlotRecord] = []
        self._spill: Optional[TextIO] = None
        self._spill_writer = None
        self.spill_path: Optional[str] = None

    def _open_spill(self) -> None:
        directory = self.spill_dir or tempfile.gettempdir()
        os.makedirs(directory, exist_ok=True)
        prefix = f"dtsim-{self.leg.direction.value}-"
        fd, self.spill_path = tempfile.mkstemp(prefix=prefix, suffix=".csv", dir=directory)
        self._spill = os.fdopen(fd, "w", newline="")
        self._spill_writer = csv.writer(self._spill, lineterminator="\n")
        logger.info("trace records above %d spill to %s", self.memory_cap, self.spill_path)

    def record(self, record: SlotRecord) -> None:
        t = record.t
        self.q_tx[t] = record.q_before.q_tx
        self.q_rx[t] = record.q_before.q_rx
        self.arrivals[t] = record.a
        self.served_out[t] = record.f_served.outflow()
        self.served_in[t] = record.f_served.inflow()
        self.served_sink[t] = record.f_served.f_sink
        if self.services is not None:
            self.services[t] = record.b
        if self.qe_tx is not None and record.q_emulated is not None:
            self.qe_tx[t] = record.q_emulated.q_tx
            self.qe_rx[t] = record.q_emulated.q_rx

        # Simpan di memori sampai batas cap, sisanya ditulis ke file spill
        if len(self.records) < self.memory_cap:
            self.records.append(record)
            return
        if self._spill is None:
            self._open_spill()
        self._spill_writer.writerow(leg_row(self.leg, record))

    def close(self, discard: bool = False) -> None:
        if self._spill is not None:
            self._spill.close()
            self._spill = None
        if discard and self.spill_path is not None:
            os.remove(self.spill_path)
            self.spill_path = None

    def finish(self, terminal: QueueState) -> LegTrace:
        self.q_tx[self.horizon] = terminal.q_tx
        self.q_rx[self.horizon] = terminal.q_rx
        self.close()
        return LegTrace(
            leg=self.leg,
            horizon=self.horizon,
            delay=self.delay,
            mode=self.mode,
            q_tx=self.q_tx,
            q_rx=self.q_rx,
            arrivals=self.arrivals,
            served_out=self.served_out,
            served_in=self.served_in,
            served_sink=self.served_sink,
            services=self.services,
            qe_tx=self.qe_tx,
            qe_rx=self.qe_rx,
            records=self.records,
            spill_path=self.spill_path,
        )
