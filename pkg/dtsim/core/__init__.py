"""
Core module for the delayed-state tracking simulator.
"""

from .config import Settings, get_settings, settings
from .exceptions import (
    DtsimError,
    UsageError,
    ConfigError,
    InvalidSpecError,
    MatchingCapacityError,
    RuntimeSimulationError,
    InvariantViolation,
    EXIT_CODES,
)
from .audit import RunAuditor, configure_logging

__all__ = [
    "Settings",
    "get_settings",
    "settings",
    "DtsimError",
    "UsageError",
    "ConfigError",
    "InvalidSpecError",
    "MatchingCapacityError",
    "RuntimeSimulationError",
    "InvariantViolation",
    "EXIT_CODES",
    "RunAuditor",
    "configure_logging",
]
