import numpy as np

from dtsim.matching.types import Matching, as_weight_matrix


def greedy_maximal_matching(w) -> Matching:
    """Take the heaviest remaining positive edge, ties on the smallest (left, right)."""
    matrix = as_weight_matrix(w)
    lefts, rights = np.nonzero(matrix > 0)
    if not len(lefts):
        return Matching(pairs=(), weight=0)
    weights = matrix[lefts, rights]
    # lexsort: last key is primary
    order = np.lexsort((rights, lefts, -weights))

    used_left, used_right = set(), set()
    pairs = []
    total = 0
    for idx in order:
        a, b = int(lefts[idx]), int(rights[idx])
        if a in used_left or b in used_right:
            continue
        used_left.add(a)
        used_right.add(b)
        pairs.append((a, b))
        total += int(weights[idx])
    return Matching(pairs=tuple(sorted(pairs)), weight=total)
