"""
CSV and text-table rendering for traces and reports.

Trace CSV columns, per leg and in this order:
    a.<tx><n>.k<k>            arrivals A(t)
    c.<tx><n>.<rx><m>         channel rates C(t)
    b.<rx><m>.k<k>            services B(t) (downlink legs only; `all` = clear everything)
    q.<tx><n>.k<k>, q.<rx><m>.k<k>     real backlogs at the start of slot t
    qe.<tx><n>.k<k>, qe.<rx><m>.k<k>   emulated backlogs decided on at t (empty unless UT and t >= D)
    f.<tx><n>.<rx><m>.k<k>    served transfers
    fs.<rx><m>.k<k>           served sink transfers (uplink legs only)
Bidirectional traces repeat the block for each leg with `up.`/`down.` prefixes.
"""

import csv
import io
from typing import Iterable, Iterator, List, Optional, Sequence, TextIO

from dtsim.models.trace import LegTrace, SlotRecord, Trace
from dtsim.schemas.common import Direction
from dtsim.schemas.scenario import Leg
from dtsim.utils.helpers import format_count

LEG_PREFIX = {Direction.UPLINK: "up.", Direction.DOWNLINK: "down."}


def _queue_names(label: str, nodes: int, classes: int) -> List[str]:
    return [f"{label}{n + 1}.k{k + 1}" for n in range(nodes) for k in range(classes)]


def leg_columns(leg: Leg, prefix: str = "") -> List[str]:
    tx, rx = leg.tx_label, leg.rx_label
    senders = _queue_names(tx, leg.n_tx, leg.n_classes)
    receivers = _queue_names(rx, leg.n_rx, leg.n_classes)
    links = [f"{tx}{j + 1}.{rx}{i + 1}" for j in range(leg.n_tx) for i in range(leg.n_rx)]
    flows = [f"{link}.k{k + 1}" for link in links for k in range(leg.n_classes)]

    columns = [f"a.{name}" for name in senders]
    columns += [f"c.{name}" for name in links]
    if leg.direction == Direction.DOWNLINK:
        columns += [f"b.{name}" for name in receivers]
    columns += [f"q.{name}" for name in senders + receivers]
    columns += [f"qe.{name}" for name in senders + receivers]
    columns += [f"f.{name}" for name in flows]
    if leg.direction == Direction.UPLINK:
        columns += [f"fs.{name}" for name in receivers]
    return [prefix + column for column in columns]


def _cells(values) -> List[str]:
    return [format_count(v) for v in values.ravel()]


def leg_row(leg: Leg, record: SlotRecord) -> List[str]:
    row = _cells(record.a) + _cells(record.c)
    if leg.direction == Direction.DOWNLINK:
        row += _cells(record.b)
    row += _cells(record.q_before.q_tx) + _cells(record.q_before.q_rx)
    if record.q_emulated is not None:
        row += _cells(record.q_emulated.q_tx) + _cells(record.q_emulated.q_rx)
    else:
        row += [""] * ((leg.n_tx + leg.n_rx) * leg.n_classes)
    row += _cells(record.f_served.f_link)
    if leg.direction == Direction.UPLINK:
        row += _cells(record.f_served.f_sink)
    return row


def trace_header(legs: Sequence[Leg]) -> List[str]:
    if len(legs) == 1:
        return ["t"] + leg_columns(legs[0])
    header = ["t"]
    for leg in legs:
        header += leg_columns(leg, LEG_PREFIX[leg.direction])
    return header


def _spilled_rows(leg_trace: LegTrace) -> Iterator[List[str]]:
    if leg_trace.spill_path is None:
        return
    with open(leg_trace.spill_path, newline="") as handle:
        yield from csv.reader(handle)


def _leg_rows(leg_trace: LegTrace) -> Iterator[List[str]]:
    """Rows without the slot column: in-memory records first, then the spill file."""
    for record in leg_trace.records:
        yield leg_row(leg_trace.leg, record)
    yield from _spilled_rows(leg_trace)


def write_trace_csv(trace: Trace, out: TextIO) -> None:
    legs = list(trace.legs.values())
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(trace_header([leg.leg for leg in legs]))
    streams = [_leg_rows(leg) for leg in legs]
    for t in range(trace.horizon):
        row = [str(t)]
        for stream in streams:
            row += next(stream)
        writer.writerow(row)


def trace_to_csv(trace: Trace) -> str:
    output = io.StringIO()
    write_trace_csv(trace, output)
    return output.getvalue()


def format_table(header: Sequence[str], rows: Iterable[Sequence[str]], title: Optional[str] = None) -> str:
    """Aligned plain-text table, columns right-aligned."""
    rows = [list(map(str, row)) for row in rows]
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = []
    if title:
        lines.append(title)
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return output.getvalue()
