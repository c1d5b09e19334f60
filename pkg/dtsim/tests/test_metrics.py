from fractions import Fraction

import pytest

from dtsim.analysis import average_backlog, backlog_series, queue_averages, stability_slope
from dtsim.analysis.metrics import BEYOND_HORIZON, empty_queue_stats, empty_times, summarize_backlog
from dtsim.core.exceptions import UsageError
from dtsim.engine import run, run_replications
from dtsim.schemas.common import ControllerMode


class TestEmptyTimes:
    def test_counts_to_next_and_since_last_empty(self):
        d, e = empty_times([0, 3, 2, 0])
        assert d.tolist() == [0, 2, 1, 0]
        assert e.tolist() == [0, 1, 2, 0]

    def test_never_empty_again(self):
        d, e = empty_times([1, 1])
        assert d.tolist() == [BEYOND_HORIZON, BEYOND_HORIZON]
        assert e.tolist() == [1, 2]

    def test_stats_follow_csv_order(self, fig2):
        stats = empty_queue_stats(run(fig2))
        assert stats.labels == ("j1.k1", "j2.k1", "i1.k1")
        assert stats.d.shape == (3, fig2.T)
        # the sink drains the receiver every slot
        assert not stats.d[stats.row("i1.k1")].any()


class TestAverages:
    def test_ideal_average_is_exact(self, fig2):
        trace = run(fig2.replace(controller=ControllerMode.IDEAL, horizon=198))
        assert average_backlog(trace, start=6) == Fraction(5, 2)

    def test_selectors_partition_backlog(self, fig2):
        trace = run(fig2)
        total = average_backlog(trace)
        assert total == average_backlog(trace, "transmitters") + average_backlog(trace, "receivers")

    def test_queue_averages_sum_to_total(self, fig2):
        trace = run(fig2)
        assert sum(queue_averages(trace).values()) == average_backlog(trace)

    def test_series_matches_average(self, fig6):
        trace = run(fig6)
        series = backlog_series(trace)
        assert Fraction(int(series.sum()), fig6.T) == average_backlog(trace)

    @pytest.mark.parametrize("window", [(5, 5), (-1, 3), (0, 2000)])
    def test_bad_windows(self, fig2, window):
        with pytest.raises(UsageError):
            average_backlog(run(fig2), start=window[0], end=window[1])

    def test_unknown_selector(self, fig2):
        with pytest.raises(UsageError, match="selector"):
            average_backlog(run(fig2), "senders")

    def test_summary_across_replications(self, fig2):
        traces = run_replications(fig2.replace(replications=3))
        summary = summarize_backlog(traces)
        assert len(summary.per_replication) == 3
        # deterministic scenario: every replication agrees
        assert summary.stderr == 0
        assert summary.mean == summary.total == summary.per_replication[0]

    def test_summary_needs_traces(self):
        with pytest.raises(UsageError):
            summarize_backlog([])


class TestStabilitySlope:
    def test_naive_suspension_grows_linearly(self, fig6):
        trace = run(fig6.replace(controller=ControllerMode.NAIVE))
        assert stability_slope(trace, (500, 1000)) == 10

    def test_tracking_suspension_is_flat(self, fig6):
        trace = run(fig6)
        assert stability_slope(trace, (500, 1000)) == 0

    def test_window_needs_two_slots(self, fig6):
        with pytest.raises(UsageError):
            stability_slope(run(fig6), (10, 11))
