import csv
import io
import os
from fractions import Fraction

import pytest

import dtsim.engine.simulator as simulator
from dtsim.cli.scenarios import builtin_scenario
from dtsim.core.config import settings
from dtsim.core.exceptions import InvariantViolation
from dtsim.engine import run
from dtsim.models.state import CLEAR_ALL
from dtsim.schemas.common import ControllerMode
from dtsim.utils.export import format_table, rows_to_csv, trace_header, trace_to_csv
from dtsim.utils.helpers import format_count, format_decimal, format_fraction, format_vector, mean_and_stderr

FIG2_HEADER = [
    "t",
    "a.j1.k1",
    "a.j2.k1",
    "c.j1.i1",
    "c.j2.i1",
    "q.j1.k1",
    "q.j2.k1",
    "q.i1.k1",
    "qe.j1.k1",
    "qe.j2.k1",
    "qe.i1.k1",
    "f.j1.i1.k1",
    "f.j2.i1.k1",
    "fs.i1.k1",
]


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


class TestTraceCsv:
    def test_header_and_length(self, fig2):
        rows = read_csv(trace_to_csv(run(fig2)))
        assert rows[0] == FIG2_HEADER
        assert len(rows) == fig2.T + 1
        assert [row[0] for row in rows[1:4]] == ["0", "1", "2"]

    def test_emulated_columns_blank_before_delay(self, fig2):
        rows = read_csv(trace_to_csv(run(fig2)))
        qe = slice(FIG2_HEADER.index("qe.j1.k1"), FIG2_HEADER.index("f.j1.i1.k1"))
        assert rows[1][qe] == ["", "", ""]
        assert all(cell != "" for cell in rows[2][qe])

    def test_ideal_has_no_emulated_values(self, fig2):
        rows = read_csv(trace_to_csv(run(fig2.replace(controller=ControllerMode.IDEAL))))
        column = FIG2_HEADER.index("qe.j1.k1")
        assert {row[column] for row in rows[1:]} == {""}

    def test_downlink_has_service_columns(self):
        cfg = builtin_scenario("lb-downlink").replace(horizon=20)
        header = trace_header([leg for leg in cfg.legs()])
        assert "b.j1.k1" in header
        assert not any(name.startswith("fs.") for name in header)
        assert header[1] == "a.i1.k1"

    def test_bidirectional_prefixes_legs(self):
        cfg = builtin_scenario("bidir").replace(horizon=10)
        header = read_csv(trace_to_csv(run(cfg)))[0]
        assert header[1].startswith("up.a.")
        assert any(name.startswith("down.b.") for name in header)

    def test_spilled_trace_matches_in_memory(self, fig2, monkeypatch, tmp_path):
        expected = trace_to_csv(run(fig2))
        monkeypatch.setattr(settings, "DTSIM_TRACE_MEMORY_CAP", 5)
        monkeypatch.setattr(settings, "DTSIM_TRACE_SPILL_DIR", str(tmp_path))
        trace = run(fig2)
        assert len(trace.records) == 5
        assert trace.primary.spill_path is not None
        assert os.path.dirname(trace.primary.spill_path) == str(tmp_path)
        assert trace_to_csv(trace) == expected

    def test_release_removes_spill_file(self, fig2, monkeypatch, tmp_path):
        monkeypatch.setattr(settings, "DTSIM_TRACE_MEMORY_CAP", 5)
        monkeypatch.setattr(settings, "DTSIM_TRACE_SPILL_DIR", str(tmp_path))
        with run(fig2) as trace:
            path = trace.primary.spill_path
            assert os.path.exists(path)
        assert not os.path.exists(path)
        assert trace.primary.spill_path is None
        assert os.listdir(tmp_path) == []

    def test_failed_run_leaves_no_spill_file(self, fig2, monkeypatch, tmp_path):
        monkeypatch.setattr(settings, "DTSIM_TRACE_MEMORY_CAP", 5)
        monkeypatch.setattr(settings, "DTSIM_TRACE_SPILL_DIR", str(tmp_path))
        real_step = simulator.step_real_uplink

        def failing_step(state, a_now, served):
            if state.q_tx.sum() > 0 and len(os.listdir(tmp_path)) == 1:
                raise InvariantViolation("injected failure")
            return real_step(state, a_now, served)

        monkeypatch.setattr(simulator, "step_real_uplink", failing_step)
        with pytest.raises(InvariantViolation):
            run(fig2)
        assert os.listdir(tmp_path) == []


class TestFormatting:
    def test_fractions(self):
        assert format_fraction(Fraction(23, 2)) == "23/2"
        assert format_fraction(5) == "5"
        assert format_decimal(Fraction(23, 2)) == "11.5000"
        assert format_decimal(Fraction(1, 3), 2) == "0.33"
        assert format_decimal(Fraction(-1, 8), 2) == "-0.13"
        assert format_decimal(Fraction(2, 3), 0) == "1"

    def test_counts(self):
        assert format_count(CLEAR_ALL) == "all"
        assert format_count(7) == "7"
        assert format_vector([5, 8]) == "(5, 8)"
        assert format_vector([3]) == "3"

    def test_mean_and_stderr(self):
        mean, stderr = mean_and_stderr([1, 3])
        assert mean == 2
        assert abs(stderr - 1.0) < 1e-12
        assert mean_and_stderr([4]) == (4, 0.0)

    def test_table_is_right_aligned(self):
        text = format_table(["t", "Q"], [[0, 5], [10, 15]], title="demo")
        assert text.splitlines() == ["demo", " t   Q", "--  --", " 0   5", "10  15"]

    def test_rows_to_csv(self):
        assert rows_to_csv(["a", "b"], [[1, "x"]]) == "a,b\n1,x\n"
