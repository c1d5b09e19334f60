import numpy as np

from dtsim.policies.base import SchedulingPolicy, empty_flows, fill_classes, register


def jsq(observed: np.ndarray, c: np.ndarray, pending: np.ndarray) -> np.ndarray:
    """Join the shortest connected queue, decided per transmitter.

    `observed` is the receiver backlog (receivers, classes) and `pending` the
    transmitter backlog including arrivals (transmitters, classes).
    """
    n_tx, n_classes = pending.shape
    n_rx = observed.shape[0]
    flows = empty_flows(n_tx, n_rx, n_classes)
    totals = observed.sum(axis=1)
    for i in range(n_tx):
        connected = np.flatnonzero(c[i] > 0)
        if not len(connected):
            continue
        # argmin returns the first minimum, i.e. the smallest index
        j = int(connected[np.argmin(totals[connected])])
        flows[i, j] = fill_classes(pending[i], int(c[i, j]))
    return flows


@register
class JSQ(SchedulingPolicy):
    kind = "JSQ"

    def decide(self, sender, receiver, c):
        return jsq(receiver, c, sender)
