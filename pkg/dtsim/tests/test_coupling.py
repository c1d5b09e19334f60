"""
Exact per-seed coupling between the real, emulated and ideal systems.
"""

import pytest

from dtsim.analysis import (
    all_coupling_violations,
    check_downlink_domination,
    check_real_emulated_gap,
    check_receiver_identity,
    run_coupled,
)
from dtsim.core.exceptions import UsageError
from dtsim.engine import run
from dtsim.schemas.common import ControllerMode, Direction

SCENARIOS = range(50)


def _report(violations):
    return "\n".join(str(v) for v in violations[:10])


@pytest.mark.parametrize("seed", SCENARIOS)
def test_coupling_identities(scenario_factory, seed):
    cfg = scenario_factory(seed)
    runs = run_coupled(cfg)
    violations = all_coupling_violations(runs)
    assert not violations, _report(violations)


@pytest.mark.parametrize("seed", range(0, 50, 5))
def test_downlink_domination_under_shifted_service(scenario_factory, seed):
    cfg = scenario_factory(1000 + seed, direction="downlink")
    runs = run_coupled(cfg, shifted_service=True)
    violations = all_coupling_violations(runs)
    assert not violations, _report(violations)
    assert not check_downlink_domination(runs.tracked)


@pytest.mark.parametrize("seed", range(5))
def test_bidirectional_coupling(scenario_factory, seed):
    cfg = scenario_factory(2000 + seed, direction="bidirectional")
    runs = run_coupled(cfg, shifted_service=True)
    violations = all_coupling_violations(runs)
    assert not violations, _report(violations)


def test_gap_identity_on_example(fig2):
    trace = run(fig2)
    assert check_real_emulated_gap(trace) == []
    assert check_receiver_identity(trace) == []


def test_checks_reject_untracked_traces(fig2):
    trace = run(fig2.replace(controller=ControllerMode.NAIVE))
    with pytest.raises(UsageError):
        check_real_emulated_gap(trace)


def test_coupled_runs_need_idle_bootstrap(fig2):
    with pytest.raises(UsageError):
        run_coupled(fig2.replace(bootstrap="act_on_available"))


def test_violation_is_reported(fig2):
    trace = run(fig2)
    leg = trace.primary
    # corrupt one emulated entry
    leg.qe_tx[5, 0, 0] += 1
    violations = check_real_emulated_gap(trace)
    assert len(violations) == 1
    v = violations[0]
    assert (v.direction, v.slot, v.queue) == (Direction.UPLINK, 5, "j1.k1")
    assert v.expected == v.actual + 1
    assert "real-emulated gap" in str(v)
