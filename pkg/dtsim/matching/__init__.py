from dtsim.matching.assignment import max_weight_matching
from dtsim.matching.greedy import greedy_maximal_matching
from dtsim.matching.types import Matching, matching_weight

__all__ = ["Matching", "matching_weight", "max_weight_matching", "greedy_maximal_matching"]
