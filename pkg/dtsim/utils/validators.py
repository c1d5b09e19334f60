from fractions import Fraction
from typing import List, Sequence, Tuple


def validate_probability(p: Fraction) -> bool:
    """Validate a single probability."""
    return 0 <= p <= 1


def validate_probability_vector(probabilities: Sequence[Fraction]) -> Tuple[bool, str]:
    """Validate a discrete distribution; the sum must be exactly 1."""
    if not probabilities:
        return False, "probabilities must not be empty"

    if not all(validate_probability(p) for p in probabilities):
        return False, "every probability must lie in [0, 1]"

    total = sum(probabilities, Fraction(0))
    if total != 1:
        return False, f"probabilities sum to {total}, not 1"

    return True, "ok"


def validate_rate_range(rate: Fraction, limit: int) -> bool:
    """Validate a non-negative rate bounded by `limit`."""
    return 0 <= rate <= limit


def validate_window(start: int, end: int, horizon: int) -> bool:
    """Half-open slot window [start, end) inside [0, horizon]."""
    return 0 <= start <= end <= horizon


def parse_int_list(text: str) -> List[int]:
    """Parse "0,1,4" into [0, 1, 4]; blanks are ignored."""
    items = [part.strip() for part in text.split(",")]
    return [int(part) for part in items if part]


def parse_slot_range(text: str) -> Tuple[int, int]:
    """Parse "a..b" (inclusive), "a:b" (half-open) or "n" into a half-open window."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi) + 1
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    n = int(text)
    return 0, n
