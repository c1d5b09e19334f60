"""
Tracking control against the ideal system: the D * sum(lambda) gap bound,
finite-horizon correction terms and the bootstrap ordering.
"""

from fractions import Fraction

import numpy as np
import pytest

from dtsim.analysis import (
    average_backlog,
    compare_bootstrap,
    compare_modes,
    composite_bound_terms,
    queue_averages,
    theorem_gap_bound,
)
from dtsim.cli.scenarios import builtin_scenario
from dtsim.engine import run, run_replications
from dtsim.schemas.common import ControllerMode
from dtsim.schemas.validation import build_scenario
from dtsim.utils.helpers import mean_and_stderr


def stable_scenario(seed: int, horizon: int, delay: int, replications: int):
    """At most 3x3, Poisson arrivals loading the system to at most 0.8."""
    rng = np.random.default_rng(seed)
    downlink = bool(rng.integers(2))
    n_tx = int(rng.integers(1, 4))
    n_rx = int(rng.integers(1, 4))
    load = Fraction(int(rng.integers(4, 9)), 10)

    if downlink:
        service = int(rng.integers(1, 3))
        capacity = min(n_rx * service, 3 * n_tx)
        rate = load * capacity / n_tx
        services = [{"receiver": i, "spec": {"kind": "Constant", "b": service}} for i in range(1, n_rx + 1)]
        policy = {"kind": ["JSQ", "MaxWeightMatch"][rng.integers(2)]}
        link_rate = 3
    else:
        # one receiver alone can drain the whole load
        rate = load * 2 / n_tx
        services = []
        policy = {"kind": ["LCQ", "MaxWeightMatch"][rng.integers(2)]}
        link_rate = 2

    data = {
        "topology": {
            "num_transmitters": n_tx,
            "num_receivers": n_rx,
            "direction": "downlink" if downlink else "uplink",
        },
        "delay": {"D": delay},
        "horizon": {"T": horizon},
        "arrivals": [{"node": j, "spec": {"kind": "Poisson", "rate": str(rate)}} for j in range(1, n_tx + 1)],
        "channels": [
            {"transmitter": j, "receiver": i, "spec": {"kind": "ConstantRate", "rate": link_rate}}
            for j in range(1, n_tx + 1)
            for i in range(1, n_rx + 1)
        ],
        "services": services,
        "policy": policy,
        "seed": int(rng.integers(0, 2**32)),
        "replications": replications,
    }
    return build_scenario(data, source=f"stable-{seed}")


def _gap(cfg):
    """Paired per-replication difference of UT and ideal averages."""
    tracked = run_replications(cfg.replace(controller=ControllerMode.UT))
    ideal = run_replications(cfg.replace(controller=ControllerMode.IDEAL))
    diffs = [average_backlog(u) - average_backlog(i) for u, i in zip(tracked, ideal)]
    return mean_and_stderr(diffs)


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("delay", [1, 3])
def test_gap_bound_reduced(seed, delay):
    cfg = stable_scenario(seed, horizon=300, delay=delay, replications=20)
    mean, stderr = _gap(cfg)
    assert float(mean) <= float(theorem_gap_bound(cfg)) + 3 * stderr


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_gap_bound_full(seed):
    delay = 1 + seed % 4
    cfg = stable_scenario(100 + seed, horizon=2000, delay=delay, replications=200)
    mean, stderr = _gap(cfg)
    assert float(mean) <= float(theorem_gap_bound(cfg)) + 3 * stderr


def test_gap_bound_sums_both_legs():
    cfg = builtin_scenario("bidir")
    # Poisson(2) at 5 INPs and 5 SPs
    assert theorem_gap_bound(cfg) == cfg.D * 20


def test_gap_bound_vanishes_without_delay(fig2):
    assert theorem_gap_bound(fig2.replace(delay=0)) == 0


class TestCompositeTerms:
    def test_one_term_per_queue(self, fig2):
        terms = composite_bound_terms(run(fig2))
        assert [t.queue for t in terms] == ["j1.k1", "j2.k1", "i1.k1"]

    def test_averages_match_queue_averages(self, fig2):
        trace = run(fig2)
        averages = queue_averages(trace)
        for term in composite_bound_terms(trace):
            assert term.average == averages[f"q.{term.queue}"]

    def test_receiver_terms_have_no_arrival_part(self, fig2):
        receiver = composite_bound_terms(run(fig2))[-1]
        assert receiver.arrival_term == 0
        assert receiver.emptying_term == 0

    def test_arrival_term_bounded_by_delay_times_rate(self, fig2):
        trace = run(fig2)
        for term in composite_bound_terms(trace)[:2]:
            assert 0 <= term.arrival_term <= fig2.D * 8
            assert term.correction == term.arrival_term - term.bootstrap_term - term.emptying_term


def test_bootstrap_comparison_shape():
    cfg = builtin_scenario("lb-downlink").replace(horizon=200)
    comparisons = compare_bootstrap(cfg, [4], replications=2)
    assert len(comparisons) == 1
    assert comparisons[0].delay == 4
    assert len(comparisons[0].idle.per_replication) == 2
    assert len(comparisons[0].act_on_available.per_replication) == 2


@pytest.mark.slow
@pytest.mark.parametrize("name", ["dsa-uplink", "lb-downlink"])
def test_bootstrap_ordering(name):
    cfg = builtin_scenario(name)
    for comparison in compare_bootstrap(cfg, [4, 10], replications=50):
        assert comparison.ordered, f"D={comparison.delay}"


def paired_margin(better, worse):
    """Mean and standard error of worse - better over replications sharing streams."""
    return mean_and_stderr([w - b for b, w in zip(better.per_replication, worse.per_replication)])


@pytest.mark.slow
@pytest.mark.parametrize("name", ["dsa-uplink", "lb-downlink"])
def test_mode_ordering_across_delays(name):
    cfg = builtin_scenario(name)
    modes = [ControllerMode.IDEAL, ControllerMode.UT, ControllerMode.NAIVE]
    report = compare_modes(cfg, modes, [1, 4, 7, 10], replications=50)
    for delay in (1, 4, 7, 10):
        ideal, tracked, naive = (report.cell(mode, delay).summary for mode in modes)
        margin, se = paired_margin(tracked, naive)
        assert margin > 2 * Fraction(se), f"UT vs naive, D={delay}"
        margin, se = paired_margin(ideal, tracked)
        assert margin > 2 * Fraction(se), f"ideal vs UT, D={delay}"
        margin, se = paired_margin(ideal, naive)
        assert margin > 2 * Fraction(se), f"ideal vs naive, D={delay}"
