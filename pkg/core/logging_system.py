# core/logging_system.py
"""
Structured logging for the numerical kernel.

Wraps the standard logging module so every record reads
``[Component] message | key=value ...``. Solver convergence, g-factor
fallbacks and similar diagnostics go through here; the JSONL audit trail of
CLI runs lives in tools/action_logger.py.
"""

import logging
import os
from typing import Any, Dict

_CONFIGURED = False


def configure_logging(level: str = None) -> None:
    """Install a single stream handler on the package root logger."""
    global _CONFIGURED
    if _CONFIGURED:
        return
    level_name = (level or os.getenv("FRACTS_LOG_LEVEL", "WARNING")).upper()
    root = logging.getLogger("fracts")
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    root.addHandler(handler)
    root.setLevel(getattr(logging, level_name, logging.WARNING))
    root.propagate = False
    _CONFIGURED = True


def _format_fields(fields: Dict[str, Any]) -> str:
    if not fields:
        return ""
    parts = []
    for key in sorted(fields):
        value = fields[key]
        if isinstance(value, float):
            value = f"{value:.6g}"
        parts.append(f"{key}={value}")
    return " | " + " ".join(parts)


class StructuredLogger:
    """Component-scoped logger emitting key=value context."""

    def __init__(self, component: str):
        self.component = component
        self._logger = logging.getLogger(f"fracts.{component}")

    def _emit(self, level: int, message: str, fields: Dict[str, Any]) -> None:
        self._logger.log(level, "[%s] %s%s", self.component, message, _format_fields(fields))

    def debug(self, message: str, **fields: Any) -> None:
        self._emit(logging.DEBUG, message, fields)

    def info(self, message: str, **fields: Any) -> None:
        self._emit(logging.INFO, message, fields)

    def warning(self, message: str, **fields: Any) -> None:
        self._emit(logging.WARNING, message, fields)

    def error(self, message: str, **fields: Any) -> None:
        self._emit(logging.ERROR, message, fields)
