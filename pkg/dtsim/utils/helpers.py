import math
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple, Union

from dtsim.models.state import CLEAR_ALL

Number = Union[int, Fraction]


def format_fraction(value: Number) -> str:
    """Exact text form: `23/2`, `5`."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Number, places: int = 4) -> str:
    """Round half away from zero at `places` decimals, computed exactly."""
    value = Fraction(value)
    scale = 10**places
    scaled = abs(value) * scale
    rounded = int(scaled + Fraction(1, 2))
    sign = "-" if value < 0 and rounded else ""
    whole, frac = divmod(rounded, scale)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


def format_count(value: int) -> str:
    """Packet counts; the clear-everything sentinel prints as `all`."""
    value = int(value)
    return "all" if value >= CLEAR_ALL else str(value)


def format_vector(values: Sequence[int]) -> str:
    """`(5, 8)` for several queues; a single entry prints bare."""
    items = [format_count(v) for v in values]
    if len(items) == 1:
        return items[0]
    return "(" + ", ".join(items) + ")"



def mean_and_stderr(values: Sequence[Number]) -> Tuple[Fraction, float]:
    """Exact sample mean and the standard error of that mean.

    A single value has standard error 0.
    """
    if not values:
        raise ValueError("mean of an empty sequence")
    n = len(values)
    mean = sum((Fraction(v) for v in values), Fraction(0)) / n
    if n == 1:
        return mean, 0.0
    variance = sum(((Fraction(v) - mean) ** 2 for v in values), Fraction(0)) / (n - 1)
    return mean, math.sqrt(variance / n)


def drop_none(params: Dict[str, Any]) -> Dict[str, Any]:
    """Keep only keys whose value is set."""
    return {k: v for k, v in params.items() if v is not None}

