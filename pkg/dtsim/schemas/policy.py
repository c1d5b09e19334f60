# schemas/policy.py

from typing import Literal, Optional, Union

from pydantic import Field, NonNegativeInt
from typing_extensions import Annotated

from dtsim.schemas.common import Direction, StrictModel


class _PolicyBase(StrictModel):
    # Uplink receiver-to-sink behaviour; None clears everything buffered.
    sink_rate: Optional[NonNegativeInt] = None
    sink_sees_inflow: bool = True


class LCQPolicy(_PolicyBase):
    kind: Literal["LCQ"] = "LCQ"


class JSQPolicy(_PolicyBase):
    kind: Literal["JSQ"] = "JSQ"


class LargestBacklogPolicy(_PolicyBase):
    kind: Literal["LargestBacklog"] = "LargestBacklog"


class ThresholdSuspendPolicy(_PolicyBase):
    kind: Literal["ThresholdSuspend"] = "ThresholdSuspend"
    threshold: NonNegativeInt
    serve: NonNegativeInt


class MaxWeightMatchPolicy(_PolicyBase):
    kind: Literal["MaxWeightMatch"] = "MaxWeightMatch"


class GreedyMatchPolicy(_PolicyBase):
    kind: Literal["GreedyMatch"] = "GreedyMatch"


PolicySpec = Annotated[
    Union[
        LCQPolicy,
        JSQPolicy,
        LargestBacklogPolicy,
        ThresholdSuspendPolicy,
        MaxWeightMatchPolicy,
        GreedyMatchPolicy,
    ],
    Field(discriminator="kind"),
]

UPLINK_ONLY = {"LCQ", "LargestBacklog", "ThresholdSuspend"}
DOWNLINK_ONLY = {"JSQ"}


class PolicyPair(StrictModel):
    """Separate policies for the two legs of a bidirectional scenario."""
    uplink: PolicySpec
    downlink: PolicySpec

    def for_direction(self, direction: Direction):
        return self.uplink if direction == Direction.UPLINK else self.downlink


def policy_for(policy, direction: Direction):
    """Resolve the policy that drives one leg."""
    if isinstance(policy, PolicyPair):
        return policy.for_direction(direction)
    return policy


def policy_label(policy) -> str:
    if isinstance(policy, PolicyPair):
        if policy.uplink.kind == policy.downlink.kind:
            return policy.uplink.kind
        return f"{policy.uplink.kind}/{policy.downlink.kind}"
    return policy.kind
