"""
Built-in scenarios.

fig2-uplink and fig6-suspend are fully determined. The others carry
placeholder parameters, listed in PLACEHOLDERS and printed by `describe`.
"""

from typing import Any, Callable, Dict, List

from dtsim.core.exceptions import UsageError
from dtsim.schemas.scenario import ScenarioConfig
from dtsim.schemas.validation import build_scenario


def _fig2_uplink() -> Dict[str, Any]:
    return {
        "topology": {"num_transmitters": 2, "num_receivers": 1, "num_classes": 1, "direction": "uplink"},
        "delay": {"D": 1},
        "horizon": {"T": 200},
        "arrivals": [
            {"node": 1, "spec": {"kind": "Constant", "a": 5}},
            {"node": 2, "spec": {"kind": "PeriodicSequence", "values": [8, 0]}},
        ],
        "channels": [
            {"transmitter": 1, "receiver": 1, "spec": {"kind": "ConstantRate", "rate": 10}},
            {"transmitter": 2, "receiver": 1, "spec": {"kind": "ConstantRate", "rate": 8}},
        ],
        "policy": {"kind": "LargestBacklog"},
        "controller": "ut",
        "bootstrap": "idle",
        "seed": 0,
    }


def _fig6_suspend() -> Dict[str, Any]:
    return {
        "topology": {"num_transmitters": 1, "num_receivers": 1, "num_classes": 1, "direction": "uplink"},
        "delay": {"D": 2},
        "horizon": {"T": 1000},
        "arrivals": [{"node": 1, "spec": {"kind": "Constant", "a": 10}}],
        "channels": [{"transmitter": 1, "receiver": 1, "spec": {"kind": "ConstantRate", "rate": 10}}],
        "policy": {"kind": "ThresholdSuspend", "threshold": 10, "serve": 10},
        "controller": "ut",
        "bootstrap": "idle",
        "seed": 0,
    }


DSA_POISSON_RATES = [2, 3, 4, 5, 6]
DSA_PERIODIC = [[4, 0], [6, 0], [8, 0], [10, 0], [12, 0]]
DSA_CONNECT_P = ["1/2", "3/5", "7/10", "4/5", "9/10"]


def _dsa_uplink() -> Dict[str, Any]:
    arrivals = [{"node": n + 1, "spec": {"kind": "Poisson", "rate": r}} for n, r in enumerate(DSA_POISSON_RATES)]
    arrivals += [
        {"node": n + 6, "spec": {"kind": "PeriodicSequence", "values": values}} for n, values in enumerate(DSA_PERIODIC)
    ]
    channels = [
        {
            "transmitter": j + 1,
            "receiver": 1,
            "spec": {"kind": "BernoulliRate", "p": DSA_CONNECT_P[j % len(DSA_CONNECT_P)], "rate": 100},
        }
        for j in range(10)
    ]
    return {
        "topology": {"num_transmitters": 10, "num_receivers": 1, "num_classes": 1, "direction": "uplink"},
        "delay": {"D": 4},
        "horizon": {"T": 1000},
        "arrivals": arrivals,
        "channels": channels,
        "policy": {"kind": "LCQ"},
        "controller": "ut",
        "bootstrap": "act_on_available",
        "seed": 2024,
    }


LB_SERVICE = [(1, 3), (2, 4), (3, 5), (4, 6), (5, 7)]


def _lb_downlink() -> Dict[str, Any]:
    return {
        "topology": {"num_transmitters": 1, "num_receivers": 5, "num_classes": 1, "direction": "downlink"},
        "delay": {"D": 4},
        "horizon": {"T": 1000},
        "arrivals": [{"node": 1, "spec": {"kind": "Poisson", "rate": 15}}],
        "channels": [
            {"transmitter": 1, "receiver": j + 1, "spec": {"kind": "BernoulliRate", "p": "4/5", "rate": 100}}
            for j in range(5)
        ],
        "services": [
            {"receiver": j + 1, "spec": {"kind": "UniformInteger", "lo": lo, "hi": hi}}
            for j, (lo, hi) in enumerate(LB_SERVICE)
        ],
        "policy": {"kind": "JSQ"},
        "controller": "ut",
        "bootstrap": "act_on_available",
        "seed": 2024,
    }


BIDIR_RATES = {
    "kind": "DiscreteRateDistribution",
    "values": [0, 2, 5, 10],
    "probabilities": ["1/10", "1/5", "3/10", "2/5"],
}


def _bidir() -> Dict[str, Any]:
    n = 5
    arrivals, channels, services = [], [], []
    for direction in ("uplink", "downlink"):
        for node in range(1, n + 1):
            arrivals.append({"node": node, "direction": direction, "spec": {"kind": "Poisson", "rate": 2}})
            for other in range(1, n + 1):
                channels.append(
                    {"transmitter": node, "receiver": other, "direction": direction, "spec": dict(BIDIR_RATES)}
                )
    for node in range(1, n + 1):
        service = {"kind": "UniformInteger", "lo": 2, "hi": 6}
        services.append({"receiver": node, "direction": "downlink", "spec": service})
    return {
        # uplink orientation: transmitters are INPs, receivers are SPs
        "topology": {"num_transmitters": n, "num_receivers": n, "num_classes": 1, "direction": "bidirectional"},
        "delay": {"D": 4},
        "horizon": {"T": 500},
        "arrivals": arrivals,
        "channels": channels,
        "services": services,
        "policy": {"kind": "MaxWeightMatch"},
        "controller": "ut",
        "bootstrap": "idle",
        "seed": 2024,
    }


BUILTINS: Dict[str, Callable[[], Dict[str, Any]]] = {
    "fig2-uplink": _fig2_uplink,
    "fig6-suspend": _fig6_suspend,
    "dsa-uplink": _dsa_uplink,
    "lb-downlink": _lb_downlink,
    "bidir": _bidir,
}

DESCRIPTIONS: Dict[str, str] = {
    "fig2-uplink": "one receiver, two transmitters; largest-backlog service with one slot of delay",
    "fig6-suspend": "one transmitter, one receiver; threshold-suspend policy destabilized by stale state",
    "dsa-uplink": "one receiver, ten transmitters; longest connected queue",
    "lb-downlink": "one dispatcher, five servers; join the shortest queue",
    "bidir": "five SPs and five INPs; max-weight matching in both directions",
}

PLACEHOLDERS: Dict[str, List[str]] = {
    "fig2-uplink": [],
    "fig6-suspend": [],
    "dsa-uplink": [
        "periodic sequences [4,0] [6,0] [8,0] [10,0] [12,0] for transmitters 6-10 (means 2-6)",
        "connection probabilities 1/2, 3/5, 7/10, 4/5, 9/10 cycled over transmitters",
        "default delay 4 and horizon 1000",
    ],
    "lb-downlink": [
        "connection probability 4/5 on every link",
        "services UniformInteger (1,3) (2,4) (3,5) (4,6) (5,7) (means 2-6)",
        "default delay 4 and horizon 1000",
    ],
    "bidir": [
        "channel rates DiscreteRateDistribution values (0,2,5,10) with probabilities (1/10,1/5,3/10,2/5)",
        "Poisson(2) arrivals at every node in both directions",
        "downlink services UniformInteger(2,6) at every INP",
        "default delay 4 and horizon 500",
    ],
}


def builtin_names() -> List[str]:
    return list(BUILTINS)


def builtin_scenario(name: str) -> ScenarioConfig:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise UsageError(f"unknown builtin scenario {name!r}; choose from {', '.join(BUILTINS)}")
    return build_scenario(factory(), source=name)
