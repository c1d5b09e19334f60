from .base import SchedulingPolicy, get_policy
from .uplink import lcq, largest_backlog, threshold_suspend, LCQ, LargestBacklog, ThresholdSuspend
from .downlink import jsq, JSQ
from .matching import matching_policy, link_weights, MaxWeightMatch, GreedyMatch

__all__ = [
    "SchedulingPolicy",
    "get_policy",
    "lcq",
    "largest_backlog",
    "threshold_suspend",
    "jsq",
    "matching_policy",
    "link_weights",
    "LCQ",
    "LargestBacklog",
    "ThresholdSuspend",
    "JSQ",
    "MaxWeightMatch",
    "GreedyMatch",
]
