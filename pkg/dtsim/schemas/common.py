from enum import Enum
from fractions import Fraction
from typing import Any, List, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer
from typing_extensions import Annotated


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("expected a number, got a boolean")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # go through the decimal text so 0.1 means 1/10
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational number: {value!r}")
    raise ValueError(f"not a rational number: {value!r}")


def _fraction_to_json(value: Fraction) -> Union[int, str]:
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


Rational = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(_fraction_to_json, when_used="always"),
]


class _LenientEnum(str, Enum):
    """String enum that also accepts CamelCase / upper-case spellings."""

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str):
            key = value.replace("_", "").replace("-", "").lower()
            for member in cls:
                if member.value.replace("_", "") == key:
                    return member
        return None


class Direction(_LenientEnum):
    UPLINK = "uplink"
    DOWNLINK = "downlink"
    BIDIRECTIONAL = "bidirectional"


class ControllerMode(_LenientEnum):
    IDEAL = "ideal"
    NAIVE = "naive"
    UT = "ut"


class BootstrapMode(_LenientEnum):
    IDLE = "idle"
    ACT_ON_AVAILABLE = "act_on_available"


class StrictModel(BaseModel):
    """Base for scenario fragments: immutable, unknown keys rejected."""

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        populate_by_name=True,
        arbitrary_types_allowed=True,
    )


class Violation(BaseModel):
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


class ValidationReport(BaseModel):
    violations: List[Violation] = []

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, field: str, message: str) -> None:
        self.violations.append(Violation(field=field, message=message))
