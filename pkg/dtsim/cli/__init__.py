from dtsim.cli.commands import (
    apply_overrides,
    cmd_describe,
    cmd_run,
    cmd_sweep,
    cmd_trace_table,
    format_trace_rows,
    load_scenario,
    trace_table_rows,
)
from dtsim.cli.scenarios import BUILTINS, PLACEHOLDERS, builtin_names, builtin_scenario

__all__ = [
    "apply_overrides",
    "cmd_describe",
    "cmd_run",
    "cmd_sweep",
    "cmd_trace_table",
    "format_trace_rows",
    "load_scenario",
    "trace_table_rows",
    "BUILTINS",
    "PLACEHOLDERS",
    "builtin_names",
    "builtin_scenario",
]
