import json
from fractions import Fraction

import pytest

from dtsim.core.config import settings
from dtsim.core.exceptions import ConfigError, InvalidSpecError
from dtsim.schemas.processes import ConstantArrival, ExplicitTraceArrival, PeriodicSequenceArrival, PoissonArrival
from dtsim.schemas.validation import arrival_rate_upper_bound, build_scenario, parse_scenario, validate_config


def uplink(**changes):
    data = {
        "topology": {"num_transmitters": 2, "num_receivers": 1, "direction": "uplink"},
        "delay": {"D": 1},
        "horizon": {"T": 50},
        "arrivals": [
            {"node": 1, "spec": {"kind": "Constant", "a": 5}},
            {"node": 2, "spec": {"kind": "Poisson", "rate": "3/2"}},
        ],
        "channels": [
            {"transmitter": 1, "receiver": 1, "spec": {"kind": "ConstantRate", "rate": 10}},
            {"transmitter": 2, "receiver": 1, "spec": {"kind": "ConstantRate", "rate": 8}},
        ],
        "policy": {"kind": "LCQ"},
    }
    data.update(changes)
    return data


def fields(exc_info):
    return [v.field for v in exc_info.value.violations]


def test_valid_scenario_builds():
    cfg = build_scenario(uplink())
    assert cfg.D == 1 and cfg.T == 50
    assert cfg.arrivals[1].spec.rate == Fraction(3, 2)
    assert validate_config(cfg).ok


def test_missing_channel_is_named():
    data = uplink()
    data["channels"] = data["channels"][:1]
    with pytest.raises(ConfigError) as exc_info:
        build_scenario(data)
    assert "missing channel spec for link (2,1)" in str(exc_info.value)


def test_duplicate_arrival_is_reported():
    data = uplink()
    data["arrivals"].append({"node": 1, "spec": {"kind": "Constant", "a": 1}})
    with pytest.raises(ConfigError, match="duplicate arrival spec"):
        build_scenario(data)


def test_delay_must_be_below_horizon():
    with pytest.raises(ConfigError) as exc_info:
        build_scenario(uplink(delay={"D": 50}))
    assert "delay.D" in fields(exc_info)


def test_unknown_keys_are_rejected():
    with pytest.raises(ConfigError):
        build_scenario(uplink(extra_field=1))


def test_probabilities_must_sum_to_one():
    data = uplink()
    data["channels"][0]["spec"] = {
        "kind": "DiscreteRateDistribution",
        "values": [0, 10],
        "probabilities": ["1/2", "1/3"],
    }
    with pytest.raises(ConfigError) as exc_info:
        build_scenario(data)
    assert "channels[0].spec" in fields(exc_info)


def test_bernoulli_probability_range():
    data = uplink()
    data["channels"][0]["spec"] = {"kind": "BernoulliRate", "p": "3/2", "rate": 4}
    with pytest.raises(ConfigError, match="p must lie in"):
        build_scenario(data)


def test_services_rejected_on_uplink():
    data = uplink(services=[{"receiver": 1, "spec": {"kind": "Constant", "b": 3}}])
    with pytest.raises(ConfigError, match="only valid for downlink receivers"):
        build_scenario(data)


def test_downlink_requires_services():
    data = uplink(topology={"num_transmitters": 2, "num_receivers": 1, "direction": "downlink"})
    data["policy"] = {"kind": "JSQ"}
    with pytest.raises(ConfigError, match="missing service spec for receiver 1"):
        build_scenario(data)


def test_uniform_service_bounds():
    data = uplink(topology={"num_transmitters": 2, "num_receivers": 1, "direction": "downlink"})
    data["policy"] = {"kind": "JSQ"}
    data["services"] = [{"receiver": 1, "spec": {"kind": "UniformInteger", "lo": 5, "hi": 2}}]
    with pytest.raises(ConfigError, match="lo <= hi"):
        build_scenario(data)


def test_jsq_on_uplink_is_rejected():
    with pytest.raises(ConfigError, match="JSQ is a downlink policy"):
        build_scenario(uplink(policy={"kind": "JSQ"}))


def test_exact_matching_above_limit_is_rejected(monkeypatch):
    monkeypatch.setattr(settings, "DTSIM_EXACT_SOLVE_LIMIT", 1)
    with pytest.raises(ConfigError, match="use GreedyMatch"):
        build_scenario(uplink(policy={"kind": "MaxWeightMatch"}))
    assert build_scenario(uplink(policy={"kind": "GreedyMatch"}))


def test_explicit_trace_must_cover_horizon():
    data = uplink()
    data["arrivals"][0]["spec"] = {"kind": "ExplicitTrace", "values": [1, 2, 3]}
    with pytest.raises(ConfigError, match="horizon is 50"):
        build_scenario(data)


def test_bidirectional_entries_need_direction(fig2):
    data = fig2.to_json_dict()
    data["topology"]["direction"] = "bidirectional"
    with pytest.raises(ConfigError, match="required for bidirectional"):
        build_scenario(data)


def test_json_syntax_error_reports_line():
    text = '{\n  "topology": {\n    "num_transmitters": 2,,\n  }\n}'
    with pytest.raises(ConfigError, match="line 3"):
        parse_scenario(text, source="broken.json")


def test_top_level_must_be_object():
    with pytest.raises(ConfigError, match="JSON object"):
        parse_scenario("[1, 2]")


def test_parse_round_trips_document():
    cfg = parse_scenario(json.dumps(uplink()))
    assert parse_scenario(json.dumps(cfg.to_json_dict())) == cfg


@pytest.mark.parametrize(
    "raw, expected",
    [("1/3", Fraction(1, 3)), (0.1, Fraction(1, 10)), (2, Fraction(2)), (" 7/2 ", Fraction(7, 2))],
)
def test_rational_parsing(raw, expected):
    assert PoissonArrival(rate=raw).rate == expected


@pytest.mark.parametrize("raw", ["abc", "1/0", True])
def test_rational_rejects_garbage(raw):
    with pytest.raises(ValueError):
        PoissonArrival(rate=raw)


def test_rational_serializes_compactly():
    assert PoissonArrival(rate="3/2").model_dump(mode="json")["rate"] == "3/2"
    assert PoissonArrival(rate=4).model_dump(mode="json")["rate"] == 4


def test_config_hash_is_stable(fig2):
    assert fig2.config_hash() == fig2.replace().config_hash()
    assert fig2.config_hash() != fig2.replace(delay=2).config_hash()


# ==================
# ARRIVAL RATE BOUND
# ==================


@pytest.mark.parametrize(
    "spec, expected",
    [
        (ConstantArrival(a=5), 5),
        (PeriodicSequenceArrival(values=[8, 0]), 4),
        (PoissonArrival(rate=15), 15),
        (PoissonArrival(rate="1/3"), Fraction(1, 3)),
        (ExplicitTraceArrival(values=[1, 2, 4]), Fraction(7, 3)),
    ],
)
def test_arrival_rate_upper_bound(spec, expected):
    assert arrival_rate_upper_bound(spec) == expected


def test_arrival_rate_ignores_rotation():
    values = [3, 0, 8, 1]
    rates = {
        arrival_rate_upper_bound(PeriodicSequenceArrival(values=values[k:] + values[:k])) for k in range(len(values))
    }
    assert rates == {Fraction(3)}


@pytest.mark.parametrize("spec", [PeriodicSequenceArrival(values=[]), ExplicitTraceArrival(values=[])])
def test_arrival_rate_rejects_empty_sequences(spec):
    with pytest.raises(InvalidSpecError):
        arrival_rate_upper_bound(spec)
