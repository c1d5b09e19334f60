import argparse
import logging
import sys
from typing import List, Optional, Sequence

from dtsim.cli.commands import cmd_describe, cmd_run, cmd_sweep, cmd_trace_table
from dtsim.cli.scenarios import builtin_names
from dtsim.core.audit import configure_logging
from dtsim.core.config import settings
from dtsim.core.exceptions import EXIT_CODES, ConfigError, DtsimError, UsageError

logger = logging.getLogger("dtsim")


class _Parser(argparse.ArgumentParser):
    """argparse parser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


def _scenario_flags(parser: argparse.ArgumentParser, with_mode: bool = True) -> None:
    parser.add_argument(
        "--scenario",
        required=True,
        help=f"builtin name ({', '.join(builtin_names())}) or scenario JSON file",
    )
    if with_mode:
        parser.add_argument("--mode", choices=["ideal", "naive", "ut"], default=None)
        parser.add_argument("--delay", type=int, default=None, help="observation delay D")
    parser.add_argument("--horizon", type=int, default=None, help="number of slots T")
    parser.add_argument("--seed", type=int, default=None, help="overrides DTSIM_SEED and the scenario seed")


def _replication_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--reps", type=int, default=None, help="replications")
    parser.add_argument("--workers", type=int, default=None, help="process pool size (DTSIM_WORKERS)")
    parser.add_argument("--warmup", type=int, default=0, help="slots excluded from averages")
    parser.add_argument("--format", choices=["csv", "table"], default="table")


def _add_run(sub) -> argparse.ArgumentParser:
    parser = sub.add_parser("run", help="simulate one scenario and summarize its backlog")
    _scenario_flags(parser)
    _replication_flags(parser)
    parser.add_argument("--out", default=None, help="write the slot trace CSV here")
    return parser


def _add_sweep(sub) -> argparse.ArgumentParser:
    parser = sub.add_parser("sweep", help="compare controller modes over a list of delays")
    _scenario_flags(parser, with_mode=False)
    _replication_flags(parser)
    parser.add_argument("--modes", default="ideal,ut,naive", help="comma-separated controller modes")
    parser.add_argument("--delays", required=True, help="comma-separated delays, e.g. 1,4,7,10")
    parser.add_argument("--policies", default=None, help="comma-separated policy kinds to compare")
    parser.add_argument("--bootstrap", action="store_true", help="compare idle and act_on_available bootstraps")
    return parser


def _add_trace(sub) -> argparse.ArgumentParser:
    parser = sub.add_parser("trace", help="print slot rows of a single run")
    _scenario_flags(parser)
    parser.add_argument("--slots", default=None, help="a..b (inclusive), a:b (half-open) or n")
    parser.add_argument("--direction", choices=["uplink", "downlink"], default=None)
    return parser


def _add_describe(sub) -> argparse.ArgumentParser:
    parser = sub.add_parser("describe", help="list builtin scenarios and their placeholder parameters")
    parser.add_argument("--scenario", default=None)
    return parser


# ===================== COMMAND REGISTRATION =====================

COMMANDS = [
    ("run", _add_run, cmd_run),
    ("sweep", _add_sweep, cmd_sweep),
    ("trace", _add_trace, cmd_trace_table),
    ("describe", _add_describe, cmd_describe),
]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dtsim", description=settings.APP_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    parser.add_argument("--log-level", default=None, help="overrides DTSIM_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for _, add, handler in COMMANDS:
        command = add(sub)
        command.set_defaults(handler=handler)
    return parser


# ===================== ERROR HANDLERS =====================


def _report(error: Exception) -> None:
    sys.stderr.write(f"dtsim: {error}\n")


def handle_usage_error(error: UsageError) -> int:
    _report(error)
    return EXIT_CODES["usage"]


def handle_config_error(error: ConfigError) -> int:
    _report(error)
    return EXIT_CODES["config"]


def handle_dtsim_error(error: DtsimError) -> int:
    _report(error)
    return error.exit_code


def handle_unexpected_error(error: Exception) -> int:
    logger.exception("unexpected failure")
    _report(error if settings.DEBUG else "internal error (set DEBUG=true for details)")
    return EXIT_CODES["runtime"]


# Urutan penting: exception paling spesifik dulu
ERROR_HANDLERS = [
    (UsageError, handle_usage_error),
    (ConfigError, handle_config_error),
    (DtsimError, handle_dtsim_error),
    (Exception, handle_unexpected_error),
]


def main(argv: Optional[Sequence[str]] = None) -> int:
    args_list: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(args_list)
        configure_logging(args.log_level.upper() if args.log_level else None)
        logger.debug("%s %s: %s", settings.APP_NAME, settings.APP_VERSION, args.command)
        return args.handler(args)
    except Exception as error:
        for kind, handler in ERROR_HANDLERS:
            if isinstance(error, kind):
                return handler(error)
        raise


if __name__ == "__main__":
    sys.exit(main())
