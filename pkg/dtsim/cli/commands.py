"""
Command implementations behind `python -m dtsim`.

Every command takes the parsed argparse namespace and a text stream for its
report, and returns the process exit status. Failures raise `DtsimError`
subclasses; `dtsim.main` turns them into exit codes.
"""

import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from pydantic import TypeAdapter, ValidationError

from dtsim.analysis import (
    ComparisonReport,
    compare_bootstrap,
    compare_modes,
    stability_slope,
    summarize_runs,
)
from dtsim.cli.scenarios import BUILTINS, DESCRIPTIONS, PLACEHOLDERS, builtin_names, builtin_scenario
from dtsim.core.config import settings
from dtsim.core.exceptions import ConfigError, UsageError
from dtsim.engine import StreamOffsets, run, run_replications
from dtsim.models.trace import LegTrace, Trace, release_traces
from dtsim.schemas.common import ControllerMode, Direction
from dtsim.schemas.policy import PolicySpec, policy_label
from dtsim.schemas.scenario import ScenarioConfig
from dtsim.schemas.validation import parse_scenario, validate_config
from dtsim.utils.export import format_table, write_trace_csv
from dtsim.utils.helpers import drop_none, format_decimal, format_vector
from dtsim.utils.validators import parse_int_list, parse_slot_range, validate_window

logger = logging.getLogger(__name__)

# Backlog growth (packets per slot over the second half of the run) reported as divergence.
DIVERGENCE_SLOPE = 1

UNDEFINED = "Undefined"
MISSING = "-"


# ===================== SCENARIO LOADING =====================


def load_scenario(source: str) -> ScenarioConfig:
    """A builtin scenario by name, or a scenario JSON file."""
    if source in BUILTINS:
        return builtin_scenario(source)
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"{source!r} is neither a builtin scenario ({', '.join(BUILTINS)}) nor a file")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"{source}: cannot read scenario file: {e}")
    return parse_scenario(text, source=str(path))


def apply_overrides(
    cfg: ScenarioConfig,
    mode: Optional[str] = None,
    delay: Optional[int] = None,
    horizon: Optional[int] = None,
    seed: Optional[int] = None,
    reps: Optional[int] = None,
) -> ScenarioConfig:
    """Flag values replace scenario values; the seed falls back to DTSIM_SEED."""
    if seed is None:
        seed = settings.DTSIM_SEED
    changes = drop_none(
        {
            "controller": mode,
            "delay": delay,
            "horizon": horizon,
            "seed": seed,
            "replications": reps,
        }
    )
    if not changes:
        return cfg
    try:
        cfg = cfg.replace(**changes)
    except ValidationError as e:
        raise UsageError(f"invalid override: {e.errors()[0].get('msg', e)}")
    report = validate_config(cfg)
    if not report.ok:
        raise ConfigError("scenario failed validation after overrides", report.violations)
    return cfg


def resolve_scenario(args) -> ScenarioConfig:
    cfg = load_scenario(args.scenario)
    return apply_overrides(
        cfg,
        mode=getattr(args, "mode", None),
        delay=getattr(args, "delay", None),
        horizon=getattr(args, "horizon", None),
        seed=getattr(args, "seed", None),
        reps=getattr(args, "reps", None),
    )


def _check_warmup(warmup: int, horizon: int) -> None:
    if not 0 <= warmup < horizon:
        raise UsageError(f"--warmup must lie in [0, {horizon})")


def _parse_modes(text: str) -> List[ControllerMode]:
    modes = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            modes.append(ControllerMode(part))
        except ValueError:
            raise UsageError(f"unknown mode {part!r}; expected ideal, naive or ut")
    if not modes:
        raise UsageError("at least one mode is required")
    return modes


def _parse_delays(text: str) -> List[int]:
    try:
        delays = parse_int_list(text)
    except ValueError:
        raise UsageError(f"--delays expects comma-separated integers, got {text!r}")
    if not delays:
        raise UsageError("--delays must name at least one delay")
    if any(d < 0 for d in delays):
        raise UsageError("delays must be non-negative")
    return delays


_POLICY_ADAPTER = TypeAdapter(PolicySpec)


def _parse_policies(text: Optional[str]) -> Optional[List[Any]]:
    """`MaxWeightMatch,GreedyMatch` into policy specs (parameterless kinds only)."""
    if not text:
        return None
    policies = []
    for kind in (part.strip() for part in text.split(",")):
        if not kind:
            continue
        try:
            policies.append(_POLICY_ADAPTER.validate_python({"kind": kind}))
        except ValidationError:
            raise UsageError(f"--policies: {kind!r} is not a parameterless policy kind")
    return policies or None


def _leg(trace: Trace, direction: Optional[str]) -> LegTrace:
    if direction is None:
        if len(trace.legs) != 1:
            raise UsageError("bidirectional scenario: choose a leg with --direction uplink|downlink")
        return trace.primary
    try:
        return trace.leg(Direction(direction))
    except (KeyError, ValueError):
        raise UsageError(f"scenario has no {direction} leg")


# ===================== RUN =====================


def _trace_paths(out: str, replications: int) -> List[Path]:
    path = Path(out)
    if replications == 1:
        return [path]
    return [path.with_name(f"{path.stem}.rep{r}{path.suffix}") for r in range(replications)]


def write_traces(traces: Sequence[Trace], out: str) -> List[Path]:
    paths = _trace_paths(out, len(traces))
    for trace, path in zip(traces, paths):
        with open(path, "w", newline="", encoding="utf-8") as handle:
            write_trace_csv(trace, handle)
        logger.info("trace for replication %d written to %s", trace.replication, path)
    return paths


def divergence_slope(trace: Trace) -> Optional[Fraction]:
    """Backlog slope over the second half of the horizon, None when too short."""
    start = trace.horizon // 2
    if trace.horizon - start < 2:
        return None
    return stability_slope(trace, (start, trace.horizon))


def cmd_run(args, stdout: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    cfg = resolve_scenario(args)
    _check_warmup(args.warmup, cfg.T)

    traces = run_replications(cfg, workers=args.workers)
    try:
        return _report_run(args, cfg, traces, stdout)
    finally:
        release_traces(traces)


def _report_run(args, cfg: ScenarioConfig, traces: List[Trace], stdout: TextIO) -> int:
    if args.out:
        write_traces(traces, args.out)

    rows, cell = summarize_runs(cfg, traces, args.warmup)
    report = ComparisonReport(warmup=args.warmup, rows=rows, cells=[cell])

    slope = divergence_slope(traces[0])
    if slope is not None and slope > DIVERGENCE_SLOPE:
        logger.warning(
            "backlog diverges: grows %s packets/slot over slots [%d, %d)",
            format_decimal(slope, 2),
            cfg.T // 2,
            cfg.T,
        )

    if args.format == "csv":
        stdout.write(report.to_csv())
        return 0

    stdout.write(report.to_table())
    if slope is not None:
        stdout.write(f"slope over [{cfg.T // 2}, {cfg.T}): {format_decimal(slope)}\n")
    return 0


# ===================== SWEEP =====================


def _bootstrap_table(comparisons) -> str:
    rows = [
        [
            str(c.delay),
            format_decimal(c.idle.mean),
            format_decimal(c.act_on_available.mean),
            "yes" if c.ordered else "no",
        ]
        for c in comparisons
    ]
    return format_table(["delay", "idle", "act_on_available", "ordered"], rows, title="bootstrap comparison (UT)")


def cmd_sweep(args, stdout: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    delays = _parse_delays(args.delays)
    cfg = resolve_scenario(args)

    if args.bootstrap:
        comparisons = compare_bootstrap(cfg, delays, replications=args.reps, workers=args.workers)
        stdout.write(_bootstrap_table(comparisons))
        return 0

    _check_warmup(args.warmup, cfg.T)
    report = compare_modes(
        cfg,
        _parse_modes(args.modes),
        delays,
        policies=_parse_policies(args.policies),
        warmup=args.warmup,
        replications=args.reps,
        workers=args.workers,
    )
    stdout.write(report.to_csv() if args.format == "csv" else report.to_table())
    return 0


# ===================== TRACE TABLE =====================


def _vector(values) -> Tuple[int, ...]:
    return tuple(int(v) for v in values.ravel())


def trace_table_rows(
    trace: Trace,
    start: int,
    end: int,
    ideal: Optional[Trace] = None,
    direction: Optional[str] = None,
) -> List[Dict[str, Any]]:
    """Slot rows in the layout of the worked examples, one dict per slot.

    Tracking: t, A, Real Q, Emulated Qe(t), F, and with `ideal` also Ideal Q
    and Ideal F. Naive: t, A, Real Q, Q(t-D)+A(t-D), F. Ideal: t, A, Q, F.
    Vectors are per transmitter queue (then per class); F is the requested
    link flow per (transmitter, receiver, class). Missing entries are None.
    """
    if not validate_window(start, end, trace.horizon) or start == end:
        raise UsageError(f"slots [{start}, {end}) are not a non-empty part of [0, {trace.horizon})")
    leg = _leg(trace, direction)
    if end > len(leg.records):
        raise UsageError(
            f"only the first {len(leg.records)} slots are kept in memory; raise DTSIM_TRACE_MEMORY_CAP"
        )
    other = _leg(ideal, direction) if ideal is not None else None
    D = leg.delay
    observed = f"Q(t-{D})+A(t-{D})" if D else "Q(t)+A(t)"

    rows = []
    for t in range(start, end):
        record = leg.records[t]
        row: Dict[str, Any] = {"t": t, "A": _vector(record.a)}
        if leg.mode == ControllerMode.IDEAL:
            row["Q"] = _vector(record.q_before.q_tx)
            row["F"] = _vector(record.f_requested.f_link)
        elif leg.mode == ControllerMode.NAIVE:
            row["Real Q"] = _vector(record.q_before.q_tx)
            row[observed] = None if t < D else _vector(record.q_observed)
            row["F"] = _vector(record.f_requested.f_link)
        else:
            row["Real Q"] = _vector(record.q_before.q_tx)
            emulated = leg.emulated_at(t + D) if t + D < leg.horizon else None
            row["Emulated Qe(t)"] = None if emulated is None else _vector(emulated.q_tx)
            row["F"] = _vector(record.f_requested.f_link)
            if other is not None:
                row["Ideal Q"] = _vector(other.q_tx[t])
                row["Ideal F"] = _vector(other.records[t].f_requested.f_link) if t < len(other.records) else None
        rows.append(row)
    return rows


def format_trace_rows(rows: List[Dict[str, Any]], title: Optional[str] = None) -> str:
    if not rows:
        return ""
    header = list(rows[0])
    cells = []
    for row in rows:
        line = []
        for key in header:
            value = row[key]
            if key == "t":
                line.append(str(value))
            elif value is None:
                line.append(UNDEFINED if key.startswith("Q(") else MISSING)
            else:
                line.append(format_vector(value))
        cells.append(line)
    return format_table(header, cells, title=title)


def cmd_trace_table(args, stdout: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    cfg = resolve_scenario(args)
    try:
        start, end = parse_slot_range(args.slots) if args.slots else (0, min(cfg.T, 10))
    except ValueError:
        raise UsageError(f"--slots expects a..b, a:b or n, got {args.slots!r}")
    if not validate_window(start, end, cfg.T) or start == end:
        raise UsageError(f"slots [{start}, {end}) lie outside the horizon [0, {cfg.T})")

    traces = [run(cfg)]
    if cfg.controller == ControllerMode.UT:
        traces.append(run(cfg.replace(controller=ControllerMode.IDEAL), 0, StreamOffsets(channels=cfg.D)))
    try:
        ideal = traces[1] if len(traces) > 1 else None
        rows = trace_table_rows(traces[0], start, end, ideal=ideal, direction=args.direction)
    finally:
        release_traces(traces)
    title = f"{args.scenario}: {cfg.controller.value}, D={cfg.D}, policy {policy_label(cfg.policy)}"
    stdout.write(format_trace_rows(rows, title=title))
    return 0


# ===================== DESCRIBE =====================


def describe_scenario(name: str) -> str:
    cfg = builtin_scenario(name)
    topo = cfg.topology
    lines = [
        f"{name}: {DESCRIPTIONS[name]}",
        f"  topology   {topo.num_transmitters}x{topo.num_receivers}, {topo.num_classes} class(es), "
        f"{topo.direction.value}",
        f"  defaults   D={cfg.D} T={cfg.T} mode={cfg.controller.value} bootstrap={cfg.bootstrap.value} "
        f"seed={cfg.seed}",
        f"  policy     {policy_label(cfg.policy)}",
    ]
    placeholders = PLACEHOLDERS[name]
    if not placeholders:
        lines.append("  parameters fully determined")
    for item in placeholders:
        lines.append(f"  placeholder: {item}")
    return "\n".join(lines) + "\n"


def cmd_describe(args, stdout: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    names = [args.scenario] if getattr(args, "scenario", None) else builtin_names()
    for name in names:
        if name not in BUILTINS:
            raise UsageError(f"unknown builtin scenario {name!r}")
        stdout.write(describe_scenario(name))
    return 0
