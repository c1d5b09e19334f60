from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
import pytest

from dtsim.cli.scenarios import builtin_scenario
from dtsim.schemas.validation import build_scenario


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run full Monte Carlo checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long Monte Carlo check, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def fig2():
    return builtin_scenario("fig2-uplink")


@pytest.fixture
def fig6():
    return builtin_scenario("fig6-suspend")


# ==================
# RANDOM SCENARIOS
# ==================

UPLINK_POLICIES = ["LCQ", "LargestBacklog", "ThresholdSuspend", "MaxWeightMatch", "GreedyMatch"]
DOWNLINK_POLICIES = ["JSQ", "MaxWeightMatch", "GreedyMatch"]
SHARED_POLICIES = ["MaxWeightMatch", "GreedyMatch"]


def _arrival(rng: np.random.Generator, max_rate: Fraction) -> Dict[str, Any]:
    choice = rng.integers(3)
    if choice == 0:
        rate = max_rate * Fraction(int(rng.integers(1, 5)), 4)
        return {"kind": "Poisson", "rate": str(rate)}
    if choice == 1:
        return {"kind": "Constant", "a": int(rng.integers(0, int(max_rate) + 1))}
    period = int(rng.integers(1, 4))
    return {"kind": "PeriodicSequence", "values": [int(v) for v in rng.integers(0, 2 * int(max_rate) + 1, period)]}


def _channel(rng: np.random.Generator) -> Dict[str, Any]:
    choice = rng.integers(3)
    if choice == 0:
        p = ["1/2", "3/4", "1"][rng.integers(3)]
        return {"kind": "BernoulliRate", "p": p, "rate": int(rng.integers(1, 6))}
    if choice == 1:
        return {"kind": "ConstantRate", "rate": int(rng.integers(0, 6))}
    return {"kind": "DiscreteRateDistribution", "values": [0, 2, 4], "probabilities": ["1/4", "1/4", "1/2"]}


def _service(rng: np.random.Generator) -> Dict[str, Any]:
    choice = rng.integers(3)
    if choice == 0:
        lo = int(rng.integers(0, 3))
        return {"kind": "UniformInteger", "lo": lo, "hi": lo + int(rng.integers(0, 4))}
    if choice == 1:
        return {"kind": "Constant", "b": int(rng.integers(0, 4))}
    return {"kind": "ClearAll"}


def _policy(rng: np.random.Generator, kinds: List[str], uplink: bool) -> Dict[str, Any]:
    kind = kinds[rng.integers(len(kinds))]
    policy: Dict[str, Any] = {"kind": kind}
    if kind == "ThresholdSuspend":
        policy.update(threshold=int(rng.integers(0, 11)), serve=int(rng.integers(1, 6)))
    if uplink and rng.random() < 0.3:
        policy["sink_rate"] = int(rng.integers(0, 4))
    if uplink and rng.random() < 0.2:
        policy["sink_sees_inflow"] = False
    return policy


def _leg_entries(rng, direction, n_tx, n_rx, classes, tagged, max_rate):
    tag = {"direction": direction} if tagged else {}
    arrivals = [
        {"node": j, "class": k, "spec": _arrival(rng, max_rate), **tag}
        for j in range(1, n_tx + 1)
        for k in range(1, classes + 1)
    ]
    channels = [
        {"transmitter": j, "receiver": i, "spec": _channel(rng), **tag}
        for j in range(1, n_tx + 1)
        for i in range(1, n_rx + 1)
    ]
    services = []
    if direction == "downlink":
        services = [
            {"receiver": i, "class": k, "spec": _service(rng), **tag}
            for i in range(1, n_rx + 1)
            for k in range(1, classes + 1)
        ]
    return arrivals, channels, services


def random_scenario(
    seed: int,
    direction: Optional[str] = None,
    horizon: int = 500,
    max_side: int = 3,
    max_rate: Fraction = Fraction(2),
    bootstrap: str = "idle",
):
    """A small valid scenario drawn from `seed`."""
    rng = np.random.default_rng(seed)
    if direction is None:
        direction = ["uplink", "downlink", "bidirectional"][rng.integers(3)]
    n_tx = int(rng.integers(1, max_side + 1))
    n_rx = int(rng.integers(1, max_side + 1))
    classes = int(rng.integers(1, 3))

    if direction == "bidirectional":
        up = _leg_entries(rng, "uplink", n_tx, n_rx, classes, True, max_rate)
        down = _leg_entries(rng, "downlink", n_rx, n_tx, classes, True, max_rate)
        arrivals, channels, services = (up[0] + down[0], up[1] + down[1], up[2] + down[2])
        if rng.random() < 0.5:
            policy = {"kind": SHARED_POLICIES[rng.integers(2)]}
        else:
            policy = {
                "uplink": _policy(rng, UPLINK_POLICIES, True),
                "downlink": _policy(rng, DOWNLINK_POLICIES, False),
            }
    else:
        arrivals, channels, services = _leg_entries(rng, direction, n_tx, n_rx, classes, False, max_rate)
        uplink = direction == "uplink"
        policy = _policy(rng, UPLINK_POLICIES if uplink else DOWNLINK_POLICIES, uplink)

    data = {
        "topology": {
            "num_transmitters": n_tx,
            "num_receivers": n_rx,
            "num_classes": classes,
            "direction": direction,
        },
        "delay": {"D": int(rng.integers(1, 5))},
        "horizon": {"T": horizon},
        "arrivals": arrivals,
        "channels": channels,
        "services": services,
        "policy": policy,
        "controller": "ut",
        "bootstrap": bootstrap,
        "seed": int(rng.integers(0, 2**32)),
    }
    return build_scenario(data, source=f"random-{seed}")


@pytest.fixture
def scenario_factory():
    return random_scenario
