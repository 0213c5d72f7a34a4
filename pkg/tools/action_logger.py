# tools/action_logger.py
"""
JSONL action log for CLI runs.

One line per event in <log_dir>/run_actions.log: command start and finish,
tool errors and exit codes.
"""

import json
import os
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from tools.base_tool import BaseTool, ToolResult
from tools.report_generator import to_serializable

ACTION_LOG_FILE = "run_actions.log"


def log_run_action(component: str, action: str, details: Any = None, level: str = "INFO",
                   log_dir: str = "logs") -> Dict[str, Any]:
    """
    Append one action entry to the run log.

    Arguments:
        component: str (coordinator, tool or solver name)
        action: str (what happened)
        details: any (converted to JSON-safe values)
        level: str (INFO, WARNING, ERROR)
        log_dir: str (directory holding run_actions.log)

    Returns:
        dict: Confirmation of logged action
    """
    os.makedirs(log_dir, exist_ok=True)
    log_file = os.path.join(log_dir, ACTION_LOG_FILE)
    entry = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "component": component,
        "action": action,
        "level": level,
        "details": to_serializable(details) if details is not None else None,
    }
    with open(log_file, "a", encoding="utf-8") as f:
        f.write(json.dumps(entry, ensure_ascii=False) + "\n")
    return {
        "status": "success",
        "message": f"Action logged for {component}",
        "log_file": log_file,
    }


class ActionLoggerTool(BaseTool):
    """Tool wrapper so the coordinator logs through the registry."""

    def __init__(self, log_dir: str = "logs"):
        super().__init__("log_run_action", "Append an entry to the JSONL run log")
        self.log_dir = log_dir

    async def execute(self, component: str, action: str, details: Optional[Any] = None,
                      level: str = "INFO") -> ToolResult:
        return ToolResult(success=True, data=log_run_action(component, action, details, level, self.log_dir))
