# tools/base_tool.py
"""
Base Tool Classes for the Command Layer

Provides the result container and base class shared by every CLI tool.
"""

import time
from dataclasses import dataclass
from typing import Any, Dict, Optional

from pydantic import ValidationError

from core.errors import FracTSError


EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


@dataclass
class ToolResult:
    """Standardized tool execution result."""
    success: bool
    data: Optional[Dict[str, Any]] = None
    error: Optional[str] = None
    execution_time_ms: Optional[float] = None
    exit_code: int = EXIT_OK


class ToolExecutionError(Exception):
    """Unexpected failure inside a tool; maps to exit code 1."""
    exit_code = EXIT_INTERNAL


class BaseTool:
    """Base class for all tools."""

    def __init__(self, name: str, description: str = ""):
        self.name = name
        self.description = description

    async def execute(self, *args, **kwargs) -> ToolResult:
        """Execute tool logic. Must be implemented in subclass."""
        raise NotImplementedError("Must be implemented in subclass")

    async def run(self, **kwargs) -> ToolResult:
        """
        Execute and time the tool, folding library errors into the result.

        FracTSError subclasses carry their own exit code and pydantic
        validation errors exit 2; anything else is re-raised as
        ToolExecutionError. ValidationError subclasses ValueError, so its
        clause must come first.
        """
        started = time.perf_counter()
        try:
            result = await self.execute(**kwargs)
        except ValidationError as exc:
            result = ToolResult(success=False, error=validation_message(exc), exit_code=EXIT_VALIDATION)
        except FracTSError as exc:
            result = ToolResult(success=False, error=f"{type(exc).__name__}: {exc}", exit_code=exc.exit_code)
        except (ValueError, TypeError, KeyError, OSError) as exc:
            raise ToolExecutionError(f"{self.name} failed: {type(exc).__name__}: {exc}") from exc
        result.execution_time_ms = (time.perf_counter() - started) * 1000.0
        return result


def validation_message(exc: ValidationError) -> str:
    """Name every offending field: 'alpha: Input should be greater than 0'."""
    parts = []
    for err in exc.errors():
        location = ".".join(str(piece) for piece in err["loc"]) or "document"
        parts.append(f"{location}: {err['msg']}")
    return "validation failed: " + "; ".join(parts)
