"""
Exact per-slot samplers for arrivals A, channel rates C and services B.

Every grid cell consumes exactly one 64-bit word per slot, so realizations of
one cell never depend on the kinds of the other cells.
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from dtsim.core.exceptions import InvalidSpecError
from dtsim.models.state import CLEAR_ALL
from dtsim.processes.streams import RandomStream
from dtsim.schemas.processes import (
    BernoulliRate,
    ClearAllService,
    ConstantArrival,
    ConstantRate,
    ConstantService,
    DiscreteRateDistribution,
    ExplicitTraceArrival,
    PeriodicSequenceArrival,
    PoissonArrival,
    UniformIntegerService,
)

TWO_64 = 1 << 64

ProcessGrid = Sequence[Sequence[object]]


def bernoulli(word: int, p: Fraction) -> bool:
    """True with probability p, exactly: word < p * 2^64."""
    return word * p.denominator < p.numerator * TWO_64


def uniform_integer(word: int, lo: int, hi: int) -> int:
    return lo + ((word * (hi - lo + 1)) >> 64)


def discrete(word: int, values: Sequence[int], probabilities: Sequence[Fraction]) -> int:
    cumulative = Fraction(0)
    for value, p in zip(values, probabilities):
        cumulative += p
        if word * cumulative.denominator < cumulative.numerator * TWO_64:
            return value
    return values[-1]


@lru_cache(maxsize=256)
def _poisson_head(rate: Fraction) -> Tuple[int, int]:
    """(bits, floor(exp(-rate) * 2^bits)) in fixed point.

    `bits` leaves 64 guard bits below the word resolution after the
    exp(-rate) underflow.
    """
    n, d = rate.numerator, rate.denominator
    bits = 128 + (3 * n) // (2 * d)
    # exp(rate) * 2^bits by its Taylor series
    term = 1 << bits
    total = term
    k = 0
    while term:
        k += 1
        term = term * n // (d * k)
        total += term
    return bits, (1 << (2 * bits)) // total


def poisson(word: int, rate: Fraction) -> int:
    """Integer inversion: the smallest k with word < CDF(k) * 2^64."""
    rate = Fraction(rate)
    if rate <= 0:
        return 0
    bits, pmf = _poisson_head(rate)
    target = word << bits
    cdf = pmf
    k = 0
    limit = int(rate + 40 * math.isqrt(int(rate) + 1) + 100)
    while target >= cdf << 64 and k < limit:
        k += 1
        pmf = pmf * rate.numerator // (rate.denominator * k)
        cdf += pmf
    return k


def draw_arrival(spec, t: int, word: int) -> int:
    if isinstance(spec, ConstantArrival):
        return spec.a
    if isinstance(spec, PeriodicSequenceArrival):
        if not spec.values:
            raise InvalidSpecError("PeriodicSequence needs at least one value")
        return spec.values[t % len(spec.values)]
    if isinstance(spec, ExplicitTraceArrival):
        if not 0 <= t < len(spec.values):
            raise InvalidSpecError(f"ExplicitTrace has no value for slot {t}")
        return spec.values[t]
    if isinstance(spec, PoissonArrival):
        return poisson(word, spec.rate)
    raise InvalidSpecError(f"unknown arrival spec {spec!r}")


def draw_channel(spec, t: int, word: int) -> int:
    if isinstance(spec, ConstantRate):
        return spec.rate
    if isinstance(spec, BernoulliRate):
        return spec.rate if bernoulli(word, spec.p) else 0
    if isinstance(spec, DiscreteRateDistribution):
        return discrete(word, spec.values, spec.probabilities)
    raise InvalidSpecError(f"unknown channel spec {spec!r}")


def draw_service(spec, t: int, word: int) -> int:
    if isinstance(spec, ConstantService):
        return spec.b
    if isinstance(spec, UniformIntegerService):
        return uniform_integer(word, spec.lo, spec.hi)
    if isinstance(spec, ClearAllService):
        return CLEAR_ALL
    raise InvalidSpecError(f"unknown service spec {spec!r}")


def _sample_grid(specs: ProcessGrid, t: int, stream: RandomStream, draw) -> np.ndarray:
    rows = len(specs)
    cols = len(specs[0]) if rows else 0
    words = stream.slot_words(t)
    out = np.zeros((rows, cols), dtype=np.int64)
    for r in range(rows):
        for c in range(cols):
            out[r, c] = draw(specs[r][c], t, int(words[r * cols + c]))
    return out


def sample_arrivals(specs: ProcessGrid, t: int, stream: RandomStream) -> np.ndarray:
    """A(t), shape (transmitters, classes)."""
    return _sample_grid(specs, t, stream, draw_arrival)


def sample_channels(specs: ProcessGrid, t: int, stream: RandomStream) -> np.ndarray:
    """C(t), shape (transmitters, receivers)."""
    return _sample_grid(specs, t, stream, draw_channel)


def sample_service(specs: ProcessGrid, t: int, stream: RandomStream) -> np.ndarray:
    """B(t), shape (receivers, classes); ClearAll cells hold CLEAR_ALL."""
    return _sample_grid(specs, t, stream, draw_service)


def grid_words(specs: ProcessGrid) -> int:
    rows = len(specs)
    return rows * (len(specs[0]) if rows else 0)


def build_grid(entries, rows: int, cols: int, row_of, col_of) -> List[List[object]]:
    """Arrange scenario entries (1-based indices) into a dense grid."""
    grid: List[List[object]] = [[None] * cols for _ in range(rows)]
    for entry in entries:
        grid[row_of(entry) - 1][col_of(entry) - 1] = entry.spec
    return grid
