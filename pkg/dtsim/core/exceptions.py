"""
Exception hierarchy shared by every dtsim module.

The CLI maps each family onto a process exit code (see ``EXIT_CODES``).
"""

from typing import List, Optional, Sequence


class DtsimError(Exception):
    """Base class for all simulator errors."""

    exit_code = 4


class UsageError(DtsimError):
    """Bad command-line usage (unknown flag values, empty delay lists...)."""

    exit_code = 2


class ConfigError(DtsimError):
    """A scenario could not be parsed or failed validation."""

    exit_code = 3

    def __init__(self, message: str, violations: Optional[Sequence] = None):
        super().__init__(message)
        self.violations: List = list(violations or [])

    def __str__(self) -> str:
        base = super().__str__()
        if not self.violations:
            return base
        lines = [base] + [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


class InvalidSpecError(DtsimError, ValueError):
    """A process spec cannot produce a value (empty sequence, bad bounds)."""

    exit_code = 3


class MatchingCapacityError(DtsimError):
    """Exact matching requested above the configured solve limit."""

    exit_code = 4


class RuntimeSimulationError(DtsimError):
    """Failure while executing a scenario."""

    exit_code = 4


class InvariantViolation(RuntimeSimulationError):
    """An internal invariant broke; ``slot`` is attached by the engine."""

    def __init__(self, message: str, slot: Optional[int] = None):
        super().__init__(message)
        self.slot = slot

    def at_slot(self, slot: int) -> "InvariantViolation":
        if self.slot is None:
            self.slot = slot
        return self

    def __str__(self) -> str:
        base = super().__str__()
        if self.slot is None:
            return base
        return f"slot {self.slot}: {base}"


EXIT_CODES = {
    "ok": 0,
    "usage": UsageError.exit_code,
    "config": ConfigError.exit_code,
    "runtime": RuntimeSimulationError.exit_code,
}
