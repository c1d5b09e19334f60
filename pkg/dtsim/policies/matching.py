"""
Pairing policies for many-to-many topologies.

Link weight: max over classes of max(0, min(rate, sender backlog - receiver
backlog)) on links with positive rate. Matched links move the best class at
min(sender backlog, rate).
"""

from typing import Tuple

import numpy as np

from dtsim.matching import greedy_maximal_matching, max_weight_matching
from dtsim.policies.base import SchedulingPolicy, empty_flows, register


def link_weights(sender: np.ndarray, receiver: np.ndarray, c: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Weight matrix (transmitters, receivers) and the class achieving it."""
    diff = sender[:, None, :] - receiver[None, :, :]
    per_class = np.minimum(c[:, :, None], diff)
    per_class = np.maximum(per_class, 0)
    per_class[c <= 0] = 0
    best_class = np.argmax(per_class, axis=2)
    weights = np.take_along_axis(per_class, best_class[:, :, None], axis=2)[:, :, 0]
    return weights.astype(np.int64), best_class


def matching_policy(sender: np.ndarray, receiver: np.ndarray, c: np.ndarray, kind: str) -> np.ndarray:
    n_tx, n_classes = sender.shape
    n_rx = receiver.shape[0]
    flows = empty_flows(n_tx, n_rx, n_classes)
    weights, best_class = link_weights(sender, receiver, c)
    if kind == "MaxWeightMatch":
        matching = max_weight_matching(weights)
    elif kind == "GreedyMatch":
        matching = greedy_maximal_matching(weights)
    else:
        raise ValueError(f"unknown matching kind {kind!r}")
    for a, b in matching.pairs:
        k = int(best_class[a, b])
        flows[a, b, k] = min(int(sender[a, k]), int(c[a, b]))
    return flows


@register
class MaxWeightMatch(SchedulingPolicy):
    kind = "MaxWeightMatch"

    def decide(self, sender, receiver, c):
        return matching_policy(sender, receiver, c, self.kind)


@register
class GreedyMatch(SchedulingPolicy):
    kind = "GreedyMatch"

    def decide(self, sender, receiver, c):
        return matching_policy(sender, receiver, c, self.kind)
