"""
Scenario validation.

`validate_config` returns violations as data; `parse_scenario` turns JSON text
into a validated `ScenarioConfig` or raises `ConfigError`.
"""

import json
from collections import Counter
from fractions import Fraction
from typing import Any, Dict, Optional

from pydantic import ValidationError

from dtsim.core.config import settings
from dtsim.core.exceptions import ConfigError, InvalidSpecError
from dtsim.schemas.common import Direction, ValidationReport
from dtsim.schemas.policy import DOWNLINK_ONLY, UPLINK_ONLY, PolicyPair
from dtsim.schemas.processes import (
    BernoulliRate,
    ConstantArrival,
    DiscreteRateDistribution,
    ExplicitTraceArrival,
    PeriodicSequenceArrival,
    PoissonArrival,
    UniformIntegerService,
)
from dtsim.schemas.scenario import ScenarioConfig
from dtsim.utils.validators import (
    validate_probability,
    validate_probability_vector,
    validate_rate_range,
)

POISSON_RATE_LIMIT = 700


def arrival_rate_upper_bound(spec) -> Fraction:
    """Long-run mean arrival rate of one arrival process."""
    if isinstance(spec, PoissonArrival):
        return Fraction(spec.rate)
    if isinstance(spec, ConstantArrival):
        return Fraction(spec.a)
    if isinstance(spec, (PeriodicSequenceArrival, ExplicitTraceArrival)):
        if not spec.values:
            raise InvalidSpecError(f"{spec.kind} needs at least one value")
        return Fraction(sum(spec.values), len(spec.values))
    raise InvalidSpecError(f"no arrival rate for spec kind {getattr(spec, 'kind', spec)!r}")


def _check_arrival(report: ValidationReport, field: str, spec, horizon: int) -> None:
    if isinstance(spec, PoissonArrival):
        if not validate_rate_range(spec.rate, POISSON_RATE_LIMIT):
            report.add(field, f"Poisson rate must lie in [0, {POISSON_RATE_LIMIT}]")
    elif isinstance(spec, (PeriodicSequenceArrival, ExplicitTraceArrival)):
        if not spec.values:
            report.add(field, f"{spec.kind} must not be empty")
        elif isinstance(spec, ExplicitTraceArrival) and len(spec.values) < horizon:
            report.add(field, f"ExplicitTrace has {len(spec.values)} values but the horizon is {horizon}")


def _check_channel(report: ValidationReport, field: str, spec) -> None:
    if isinstance(spec, BernoulliRate):
        if not validate_probability(spec.p):
            report.add(field, "p must lie in [0, 1]")
    elif isinstance(spec, DiscreteRateDistribution):
        if not spec.values:
            report.add(field, "DiscreteRateDistribution needs at least one value")
        elif len(spec.values) != len(spec.probabilities):
            report.add(field, "values and probabilities must have the same length")
        else:
            ok, message = validate_probability_vector(spec.probabilities)
            if not ok:
                report.add(field, message)


def _check_service(report: ValidationReport, field: str, spec) -> None:
    if isinstance(spec, UniformIntegerService) and spec.lo > spec.hi:
        report.add(field, "UniformInteger requires lo <= hi")


def _check_policy(report: ValidationReport, cfg: ScenarioConfig) -> None:
    if not cfg.is_bidirectional and isinstance(cfg.policy, PolicyPair):
        report.add("policy", "an uplink/downlink policy pair needs a bidirectional topology")
        return

    for leg in cfg.legs():
        policy = cfg.policy_for(leg.direction)
        field = "policy" if not isinstance(cfg.policy, PolicyPair) else f"policy.{leg.direction.value}"
        if leg.direction == Direction.UPLINK and policy.kind in DOWNLINK_ONLY:
            report.add(field, f"{policy.kind} is a downlink policy")
        if leg.direction == Direction.DOWNLINK:
            if policy.kind in UPLINK_ONLY:
                report.add(field, f"{policy.kind} is an uplink policy")
            if policy.sink_rate is not None:
                report.add(f"{field}.sink_rate", "sink_rate applies to uplink receivers only")
        if policy.kind == "MaxWeightMatch":
            limit = settings.DTSIM_EXACT_SOLVE_LIMIT
            if max(leg.n_tx, leg.n_rx) > limit:
                report.add(
                    field,
                    f"MaxWeightMatch solves exactly up to {limit} nodes per side; use GreedyMatch",
                )


def validate_config(cfg: ScenarioConfig) -> ValidationReport:
    """Check a parsed scenario; a clean report means the engine can run it."""
    report = ValidationReport()
    D, T = cfg.D, cfg.T
    if D >= T:
        report.add("delay.D", "delay must be < horizon")

    topo = cfg.topology
    legs = {leg.direction: leg for leg in cfg.legs()}

    for name, items in (("arrivals", cfg.arrivals), ("channels", cfg.channels), ("services", cfg.services)):
        for idx, entry in enumerate(items):
            if cfg.is_bidirectional and entry.direction is None:
                report.add(f"{name}[{idx}].direction", "required for bidirectional scenarios")
            elif entry.direction == Direction.BIDIRECTIONAL:
                report.add(f"{name}[{idx}].direction", "must be uplink or downlink")
            elif not cfg.is_bidirectional and entry.direction not in (None, topo.direction):
                report.add(f"{name}[{idx}].direction", f"scenario is {topo.direction.value}-only")

    for direction, leg in legs.items():
        tag = f"{direction.value} " if cfg.is_bidirectional else ""

        seen: Counter = Counter()
        for idx, entry in enumerate(cfg.arrivals):
            if cfg.leg_direction(entry.direction) != direction:
                continue
            field = f"arrivals[{idx}]"
            if entry.node > leg.n_tx:
                report.add(f"{field}.node", f"{tag}transmitter {entry.node} is outside the topology")
            if entry.klass > leg.n_classes:
                report.add(f"{field}.class", f"class {entry.klass} is outside the topology")
            seen[(entry.node, entry.klass)] += 1
            _check_arrival(report, f"{field}.spec", entry.spec, T)
        for node in range(1, leg.n_tx + 1):
            for klass in range(1, leg.n_classes + 1):
                count = seen[(node, klass)]
                if count == 0:
                    report.add("arrivals", f"missing {tag}arrival spec for queue (node {node}, class {klass})")
                elif count > 1:
                    report.add("arrivals", f"duplicate {tag}arrival spec for queue (node {node}, class {klass})")

        seen = Counter()
        for idx, entry in enumerate(cfg.channels):
            if cfg.leg_direction(entry.direction) != direction:
                continue
            field = f"channels[{idx}]"
            if entry.transmitter > leg.n_tx:
                report.add(f"{field}.transmitter", f"{tag}transmitter {entry.transmitter} is outside the topology")
            if entry.receiver > leg.n_rx:
                report.add(f"{field}.receiver", f"{tag}receiver {entry.receiver} is outside the topology")
            seen[(entry.transmitter, entry.receiver)] += 1
            _check_channel(report, f"{field}.spec", entry.spec)
        for tx in range(1, leg.n_tx + 1):
            for rx in range(1, leg.n_rx + 1):
                count = seen[(tx, rx)]
                if count == 0:
                    report.add("channels", f"missing {tag}channel spec for link ({tx},{rx})")
                elif count > 1:
                    report.add("channels", f"duplicate {tag}channel spec for link ({tx},{rx})")

        seen = Counter()
        for idx, entry in enumerate(cfg.services):
            if cfg.leg_direction(entry.direction) != direction:
                continue
            field = f"services[{idx}]"
            if direction == Direction.UPLINK:
                report.add(field, "services are only valid for downlink receivers")
                continue
            if entry.receiver > leg.n_rx:
                report.add(f"{field}.receiver", f"{tag}receiver {entry.receiver} is outside the topology")
            if entry.klass > leg.n_classes:
                report.add(f"{field}.class", f"class {entry.klass} is outside the topology")
            seen[(entry.receiver, entry.klass)] += 1
            _check_service(report, f"{field}.spec", entry.spec)
        if direction == Direction.DOWNLINK:
            for rx in range(1, leg.n_rx + 1):
                for klass in range(1, leg.n_classes + 1):
                    count = seen[(rx, klass)]
                    if count == 0:
                        report.add("services", f"missing service spec for receiver {rx}, class {klass}")
                    elif count > 1:
                        report.add("services", f"duplicate service spec for receiver {rx}, class {klass}")

    _check_policy(report, cfg)
    return report


def _pydantic_violations(exc: ValidationError):
    report = ValidationReport()
    # Ubah error pydantic jadi satu Violation per field
    for err in exc.errors():
        location = ".".join(str(part) for part in err.get("loc", ())) or "<root>"
        report.add(location, err.get("msg", "invalid value"))
    return report.violations


def build_scenario(data: Dict[str, Any], source: Optional[str] = None) -> ScenarioConfig:
    """Validate a decoded scenario document, raising ConfigError on failure."""
    label = source or "scenario"
    try:
        cfg = ScenarioConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{label}: invalid scenario", _pydantic_violations(e))
    report = validate_config(cfg)
    if not report.ok:
        raise ConfigError(f"{label}: scenario failed validation", report.violations)
    return cfg


def parse_scenario(text: str, source: Optional[str] = None) -> ScenarioConfig:
    label = source or "scenario"
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{label}: line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(data, dict):
        raise ConfigError(f"{label}: top level must be a JSON object")
    return build_scenario(data, source=label)
