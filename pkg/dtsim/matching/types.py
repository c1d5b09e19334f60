from dataclasses import dataclass
from typing import Tuple

import numpy as np

from dtsim.core.exceptions import InvalidSpecError


@dataclass(frozen=True)
class Matching:
    """Sorted (left, right) pairs and their total weight."""

    pairs: Tuple[Tuple[int, int], ...]
    weight: int

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def is_valid(self) -> bool:
        lefts = [a for a, _ in self.pairs]
        rights = [b for _, b in self.pairs]
        return len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights)


def as_weight_matrix(w) -> np.ndarray:
    """Coerce to a rectangular non-negative int64 matrix."""
    matrix = np.asarray(w, dtype=np.int64)
    if matrix.ndim != 2:
        raise InvalidSpecError("weight matrix must be two-dimensional")
    if (matrix < 0).any():
        raise InvalidSpecError("weight matrix entries must be >= 0")
    return matrix


def matching_weight(w, pairs) -> int:
    matrix = np.asarray(w, dtype=np.int64)
    return int(sum(int(matrix[a, b]) for a, b in pairs))
