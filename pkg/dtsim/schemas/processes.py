# schemas/processes.py

from typing import List, Literal, Optional, Union

from pydantic import Field, NonNegativeInt, PositiveInt
from typing_extensions import Annotated

from dtsim.schemas.common import Direction, Rational, StrictModel

# ==================
# ARRIVAL SPECS
# ==================


class PoissonArrival(StrictModel):
    """Poisson(rate) packets per slot; rate is an exact rational."""
    kind: Literal["Poisson"] = "Poisson"
    rate: Rational


class ConstantArrival(StrictModel):
    kind: Literal["Constant"] = "Constant"
    a: NonNegativeInt


class PeriodicSequenceArrival(StrictModel):
    """values[t mod period]; non-stationary but periodic."""
    kind: Literal["PeriodicSequence"] = "PeriodicSequence"
    values: List[NonNegativeInt]


class ExplicitTraceArrival(StrictModel):
    """values[t]; must cover the horizon."""
    kind: Literal["ExplicitTrace"] = "ExplicitTrace"
    values: List[NonNegativeInt]


ArrivalSpec = Annotated[
    Union[PoissonArrival, ConstantArrival, PeriodicSequenceArrival, ExplicitTraceArrival],
    Field(discriminator="kind"),
]

# ==================
# CHANNEL SPECS
# ==================


class BernoulliRate(StrictModel):
    """Link is connected with probability p and then carries `rate` packets."""
    kind: Literal["BernoulliRate"] = "BernoulliRate"
    p: Rational
    rate: NonNegativeInt


class DiscreteRateDistribution(StrictModel):
    kind: Literal["DiscreteRateDistribution"] = "DiscreteRateDistribution"
    values: List[NonNegativeInt]
    probabilities: List[Rational]


class ConstantRate(StrictModel):
    kind: Literal["ConstantRate"] = "ConstantRate"
    rate: NonNegativeInt


ChannelSpec = Annotated[
    Union[BernoulliRate, DiscreteRateDistribution, ConstantRate],
    Field(discriminator="kind"),
]

# ==================
# SERVICE SPECS
# ==================


class UniformIntegerService(StrictModel):
    """Uniform over lo..hi inclusive."""
    kind: Literal["UniformInteger"] = "UniformInteger"
    lo: NonNegativeInt
    hi: NonNegativeInt


class ConstantService(StrictModel):
    kind: Literal["Constant"] = "Constant"
    b: NonNegativeInt


class ClearAllService(StrictModel):
    """Serve everything buffered at the receiver."""
    kind: Literal["ClearAll"] = "ClearAll"


ServiceSpec = Annotated[
    Union[UniformIntegerService, ConstantService, ClearAllService],
    Field(discriminator="kind"),
]

# ==================
# SCENARIO ENTRIES
# ==================


class ArrivalEntry(StrictModel):
    """Arrival process feeding entry queue (node, class); indices are 1-based."""
    node: PositiveInt
    klass: PositiveInt = Field(1, alias="class")
    direction: Optional[Direction] = None
    spec: ArrivalSpec


class ChannelEntry(StrictModel):
    transmitter: PositiveInt
    receiver: PositiveInt
    direction: Optional[Direction] = None
    spec: ChannelSpec


class ServiceEntry(StrictModel):
    receiver: PositiveInt
    klass: PositiveInt = Field(1, alias="class")
    direction: Optional[Direction] = None
    spec: ServiceSpec
