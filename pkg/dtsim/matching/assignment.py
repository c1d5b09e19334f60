"""
Exact maximum weight bipartite matching.

The optimum value comes from scipy's assignment solver; the returned pairs
are then fixed row by row so the sorted pair list is lexicographically
smallest among all optimal matchings.
"""

from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from dtsim.core.config import settings
from dtsim.core.exceptions import InvariantViolation, MatchingCapacityError
from dtsim.matching.types import Matching, as_weight_matrix


def _best_value(w: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> int:
    if not len(rows) or not len(cols):
        return 0
    sub = w[np.ix_(rows, cols)]
    if not sub.any():
        return 0
    r, c = linear_sum_assignment(sub, maximize=True)
    return int(sub[r, c].sum())


def max_weight_matching(w, limit: Optional[int] = None) -> Matching:
    """Maximum total weight; zero-weight pairs are never returned."""
    matrix = as_weight_matrix(w)
    limit = settings.DTSIM_EXACT_SOLVE_LIMIT if limit is None else limit
    if max(matrix.shape, default=0) > limit:
        raise MatchingCapacityError(
            f"exact matching is limited to {limit} nodes per side, got {matrix.shape}; "
            "use greedy_maximal_matching (GreedyMatch) instead"
        )
    n_rows, n_cols = matrix.shape
    optimum = _best_value(matrix, list(range(n_rows)), list(range(n_cols)))
    if optimum == 0:
        return Matching(pairs=(), weight=0)

    free: List[int] = list(range(n_cols))
    pairs = []
    forced = 0
    for r in range(n_rows):
        rest = list(range(r + 1, n_rows))
        for c in free:
            weight = int(matrix[r, c])
            if weight <= 0:
                continue
            remaining = [col for col in free if col != c]
            if forced + weight + _best_value(matrix, rest, remaining) == optimum:
                pairs.append((r, c))
                forced += weight
                free = remaining
                break
    if forced != optimum:
        raise InvariantViolation(f"tie-break pass lost weight: {forced} != {optimum}")
    return Matching(pairs=tuple(pairs), weight=forced)
