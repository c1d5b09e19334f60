# dtsim/core/audit.py

import json
import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

from dtsim.core.config import settings

logger = logging.getLogger("dtsim.audit")


class RunAuditor:
    """Emits one JSON entry per simulation run, and one per failed run."""

    def __init__(self, enabled: Optional[bool] = None):
        self.enabled = settings.DTSIM_AUDIT if enabled is None else enabled

    @contextmanager
    def track(self, **context: Any) -> Iterator[Dict[str, Any]]:
        start_time = time.perf_counter()
        extra: Dict[str, Any] = {}
        try:
            yield extra
        except Exception as e:
            process_time = time.perf_counter() - start_time
            self._log_error(context, e, process_time)
            # Re-raise exception agar CLI yang menentukan exit code
            raise
        process_time = time.perf_counter() - start_time
        self._log_run({**context, **extra}, process_time)

    def _log_run(self, context: Dict[str, Any], process_time: float) -> None:
        """Log a completed run."""
        if not self.enabled:
            return
        log_entry = {
            **context,
            "outcome": "ok",
            "process_time": round(process_time, 6),
            "timestamp": time.time(),
        }
        logger.info("AUDIT: %s", json.dumps(log_entry, sort_keys=True, default=str))

    def _log_error(self, context: Dict[str, Any], error: Exception, process_time: float) -> None:
        """Log a failed run."""
        log_entry = {
            **context,
            "outcome": "error",
            "error_type": type(error).__name__,
            "error_message": str(error),
            "process_time": round(process_time, 6),
            "timestamp": time.time(),
        }
        # Error selalu dicatat, walaupun audit dimatikan
        logger.error("AUDIT ERROR: %s", json.dumps(log_entry, sort_keys=True, default=str))


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging once for CLI use."""
    logging.basicConfig(
        level=getattr(logging, (level or settings.DTSIM_LOG_LEVEL), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if settings.DTSIM_AUDIT:
        logger.setLevel(logging.INFO)
