# controllers/observation.py

from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, Optional

import numpy as np

from dtsim.models.state import Observation, PartialView, QueueState
from dtsim.schemas.common import Direction
from dtsim.schemas.scenario import Leg


@dataclass(frozen=True)
class SlotSnapshot:
    t: int
    a: np.ndarray
    b: Optional[np.ndarray]
    q: QueueState


class ObservationChannel:
    """Delivers A(t-D), B(t-D) and, for naive control, Q(t-D).

    Holds the last D+1 slots; the controller never sees anything fresher than
    t-D except its own side of the link and the current channel rates.
    """

    def __init__(self, leg: Leg, delay: int):
        self.leg = leg
        self.delay = delay
        self._history: Deque[SlotSnapshot] = deque(maxlen=delay + 1)

    def push(self, t: int, a: np.ndarray, b: Optional[np.ndarray], q: QueueState) -> None:
        # Slot harus berurutan, tidak boleh lompat
        if self._history and self._history[-1].t != t - 1:
            raise ValueError(f"observation channel expects slot {self._history[-1].t + 1}, got {t}")
        self._history.append(SlotSnapshot(t, a, b, q))

    def _snapshot(self, t: int) -> SlotSnapshot:
        offset = self._history[-1].t - t
        return self._history[-1 - offset]

    def observe(self, t: int, c_now: np.ndarray, include_state: bool = False) -> Observation:
        if t < self.delay:
            return Observation(t=t, c_now=c_now)
        old = self._snapshot(t - self.delay)
        return Observation(
            t=t,
            c_now=c_now,
            a_delayed=old.a,
            b_delayed=old.b,
            q_stale=old.q if include_state else None,
        )

    def partial_view(self, t: int, own: QueueState, a_now: np.ndarray) -> PartialView:
        """Cyclic polling before the first delayed report.

        Remote node (s mod n) is polled during slot s and its report is usable
        from slot s+1. Own-side queues are always known.
        """
        uplink = self.leg.direction == Direction.UPLINK
        n_remote = self.leg.n_tx if uplink else self.leg.n_rx
        latest: Dict[int, int] = {}
        for s in range(max(0, t - n_remote), t):
            latest[s % n_remote] = s

        if uplink:
            sender = np.zeros_like(own.q_tx)
            for node, s in latest.items():
                snap = self._snapshot(s)
                sender[node] = snap.q.q_tx[node] + snap.a[node]
            return PartialView(sender=sender, receiver=own.q_rx.copy(), known_tx=tuple(sorted(latest)))

        receiver = np.zeros_like(own.q_rx)
        for node, s in latest.items():
            receiver[node] = self._snapshot(s).q.q_rx[node]
        return PartialView(sender=own.q_tx + a_now, receiver=receiver, known_rx=tuple(sorted(latest)))
