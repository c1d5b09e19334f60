# schemas/scenario.py

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple, Union

from pydantic import Field, NonNegativeInt, PositiveInt

from dtsim.schemas.common import BootstrapMode, ControllerMode, Direction, StrictModel
from dtsim.schemas.policy import PolicyPair, PolicySpec, policy_for
from dtsim.schemas.processes import ArrivalEntry, ChannelEntry, ServiceEntry

SEED_LIMIT = 2**64


class Topology(StrictModel):
    """Node counts. For bidirectional scenarios counts are given in uplink
    orientation: transmitters are INPs and receivers are SPs."""
    num_transmitters: PositiveInt
    num_receivers: PositiveInt
    num_classes: PositiveInt = 1
    direction: Direction = Direction.UPLINK


class DelayModel(StrictModel):
    D: NonNegativeInt


class Horizon(StrictModel):
    T: PositiveInt


@dataclass(frozen=True)
class Leg:
    """One direction of traffic with its own orientation."""

    direction: Direction
    n_tx: int
    n_rx: int
    n_classes: int

    @property
    def code(self) -> int:
        return 0 if self.direction == Direction.UPLINK else 1

    @property
    def tx_label(self) -> str:
        # uplink transmitters are j, downlink transmitters are i
        return "j" if self.direction == Direction.UPLINK else "i"

    @property
    def rx_label(self) -> str:
        return "i" if self.direction == Direction.UPLINK else "j"


class ScenarioConfig(StrictModel):
    topology: Topology
    delay: DelayModel
    horizon: Horizon
    arrivals: List[ArrivalEntry]
    channels: List[ChannelEntry]
    services: List[ServiceEntry] = []
    policy: Union[PolicySpec, PolicyPair]
    controller: ControllerMode = ControllerMode.UT
    bootstrap: BootstrapMode = BootstrapMode.IDLE
    seed: int = Field(0, ge=0, lt=SEED_LIMIT)
    replications: PositiveInt = 1

    @property
    def D(self) -> int:
        return self.delay.D

    @property
    def T(self) -> int:
        return self.horizon.T

    @property
    def is_bidirectional(self) -> bool:
        return self.topology.direction == Direction.BIDIRECTIONAL

    def legs(self) -> List[Leg]:
        topo = self.topology
        up = Leg(Direction.UPLINK, topo.num_transmitters, topo.num_receivers, topo.num_classes)
        if topo.direction == Direction.UPLINK:
            return [up]
        if topo.direction == Direction.DOWNLINK:
            return [Leg(Direction.DOWNLINK, topo.num_transmitters, topo.num_receivers, topo.num_classes)]
        down = Leg(Direction.DOWNLINK, topo.num_receivers, topo.num_transmitters, topo.num_classes)
        return [up, down]

    def leg_direction(self, entry_direction) -> Direction:
        """Direction an entry belongs to; single-direction scenarios imply it."""
        if entry_direction is not None:
            return entry_direction
        return self.topology.direction

    def policy_for(self, direction: Direction):
        return policy_for(self.policy, direction)

    def entries_for(self, direction: Direction) -> Tuple[List[ArrivalEntry], List[ChannelEntry], List[ServiceEntry]]:
        pick = lambda items: [e for e in items if self.leg_direction(e.direction) == direction]
        return pick(self.arrivals), pick(self.channels), pick(self.services)

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True)

    def config_hash(self) -> str:
        canonical = json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

    def replace(self, **changes: Any) -> "ScenarioConfig":
        """Validated copy with top-level fields replaced.

        `delay` and `horizon` accept plain integers.
        """
        data = self.to_json_dict()
        for key, value in changes.items():
            if value is None:
                continue
            if key == "delay" and isinstance(value, int):
                value = {"D": value}
            elif key == "horizon" and isinstance(value, int):
                value = {"T": value}
            elif hasattr(value, "model_dump"):
                value = value.model_dump(mode="json", by_alias=True)
            elif hasattr(value, "value"):
                value = value.value
            data[key] = value
        return ScenarioConfig.model_validate(data)
