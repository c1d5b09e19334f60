# policies/uplink.py

from typing import Optional, Tuple

import numpy as np

from dtsim.policies.base import SchedulingPolicy, empty_flows, fill_classes, register


def _largest_queue(observed: np.ndarray, allowed: np.ndarray) -> Optional[Tuple[int, int]]:
    """Largest positive observed queue (j, k) among allowed transmitters; ties go low."""
    best = None
    best_value = 0
    n_tx, n_classes = observed.shape
    for j in range(n_tx):
        if not allowed[j]:
            continue
        for k in range(n_classes):
            value = int(observed[j, k])
            if value > best_value:
                best, best_value = (j, k), value
    return best


def _serve_largest(observed: np.ndarray, c: np.ndarray, connected_only: bool) -> np.ndarray:
    n_tx, n_classes = observed.shape
    n_rx = c.shape[1]
    flows = empty_flows(n_tx, n_rx, n_classes)
    for i in range(n_rx):
        allowed = c[:, i] > 0 if connected_only else np.ones(n_tx, dtype=bool)
        choice = _largest_queue(observed, allowed)
        if choice is None:
            continue
        j, k = choice
        flows[j, i, k] = min(int(observed[j, k]), int(c[j, i]))
    return flows


def lcq(observed: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Longest connected queue, decided per receiver."""
    return _serve_largest(observed, c, connected_only=True)


def largest_backlog(observed: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Like lcq but ignores connectivity; a zero-rate choice requests nothing."""
    return _serve_largest(observed, c, connected_only=False)


def threshold_suspend(observed: np.ndarray, c: np.ndarray, threshold: int, serve: int) -> np.ndarray:
    """Per link: serve up to `serve` packets while the sender looks uncongested."""
    n_tx, n_classes = observed.shape
    n_rx = c.shape[1]
    flows = empty_flows(n_tx, n_rx, n_classes)
    for j in range(n_tx):
        if int(observed[j].sum()) > threshold:
            continue
        for i in range(n_rx):
            amount = min(serve, int(c[j, i]))
            if amount <= 0:
                continue
            per_class = fill_classes(observed[j], amount)
            # request tidak dibatasi backlog yang terlihat
            per_class[0] += amount - int(per_class.sum())
            flows[j, i] = per_class
    return flows


@register
class LCQ(SchedulingPolicy):
    kind = "LCQ"

    def decide(self, sender, receiver, c):
        return lcq(sender, c)


@register
class LargestBacklog(SchedulingPolicy):
    kind = "LargestBacklog"

    def decide(self, sender, receiver, c):
        return largest_backlog(sender, c)


@register
class ThresholdSuspend(SchedulingPolicy):
    kind = "ThresholdSuspend"

    def decide(self, sender, receiver, c):
        return threshold_suspend(sender, c, self.spec.threshold, self.spec.serve)
