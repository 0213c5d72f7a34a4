"""
ObservabilityPlugin for fractional-calculus command runs.

Traces, metrics and error tracking for CLI commands and the tools they
invoke. Exports go to the log directory only; run artifacts never carry
timestamps.
"""

import json
import os
import time
from datetime import datetime
from typing import Any, Dict


class ObservabilityPlugin:
    """
    Observability plugin for the command coordinator.

    Responsibilities:
    - Trace every command with its tool spans
    - Count command and tool calls, errors and latencies
    - Collect numerical metrics: solver iterations, divergence flags, audit verdicts
    - Export traces and metrics to JSON
    """
    def __init__(self, log_dir="./logs"):
        self.log_dir = log_dir
        self.traces: Dict[str, Dict] = {}
        self._started: Dict[str, float] = {}
        self.metrics = {
            "command_calls": {},
            "tool_calls": {},
            "errors": [],
            "latencies_ms": [],
            "solver_iterations": 0,
            "divergence_flags": 0,
            "audit_mismatches": 0,
        }

    async def before_command_callback(self, command, context):
        """Start a command trace."""
        trace_id = context.get("trace_id", str(time.time()))
        self.traces.setdefault(trace_id, {
            "start": datetime.now().isoformat(),
            "spans": [],
            "command": command,
        })
        self._started[trace_id] = time.perf_counter()
        self.metrics["command_calls"][command] = self.metrics["command_calls"].get(command, 0) + 1
        self.traces[trace_id]["spans"].append({
            "name": f"{command}_start",
            "timestamp": datetime.now().isoformat(),
        })

    async def after_command_callback(self, command, context, result):
        """Close the trace and fold numerical metrics from the tool result."""
        trace_id = context.get("trace_id", str(time.time()))
        self.traces.setdefault(trace_id, {"spans": []})
        self.traces[trace_id]["spans"].append({
            "name": f"{command}_end",
            "timestamp": datetime.now().isoformat(),
            "exit_code": getattr(result, "exit_code", None),
        })
        started = self._started.pop(trace_id, None)
        if started is not None:
            self.metrics["latencies_ms"].append((time.perf_counter() - started) * 1000.0)
        data = getattr(result, "data", None) or {}
        self.metrics["solver_iterations"] += int(data.get("iterations", 0) or 0)
        self.metrics["divergence_flags"] += int(data.get("divergence_flags", 0) or 0)
        self.metrics["audit_mismatches"] += int(data.get("mismatches", 0) or 0)

    async def before_tool_callback(self, tool_name, tool_input):
        self.metrics["tool_calls"][tool_name] = self.metrics["tool_calls"].get(tool_name, 0) + 1

    async def after_tool_callback(self, tool_name, tool_output):
        if getattr(tool_output, "success", True) is False:
            self.metrics["errors"].append({
                "error": tool_output.error,
                "context": {"tool": tool_name},
                "timestamp": datetime.now().isoformat(),
            })

    async def on_error_callback(self, error, context):
        """Track errors with context info."""
        self.metrics["errors"].append({
            "error": str(error),
            "context": context,
            "timestamp": datetime.now().isoformat(),
        })

    def get_trace(self, trace_id):
        return self.traces.get(trace_id, {})

    def get_metrics_summary(self) -> Dict[str, Any]:
        """Aggregate metrics for the current process."""
        total_commands = sum(self.metrics["command_calls"].values())
        error_count = len(self.metrics["errors"])
        latencies = self.metrics["latencies_ms"]
        return {
            "total_command_calls": total_commands,
            "total_tool_calls": sum(self.metrics["tool_calls"].values()),
            "error_count": error_count,
            "avg_latency_ms": sum(latencies) / len(latencies) if latencies else 0.0,
            "success_rate": 1.0 - error_count / max(1, total_commands),
            "solver_iterations": self.metrics["solver_iterations"],
            "divergence_flags": self.metrics["divergence_flags"],
            "audit_mismatches": self.metrics["audit_mismatches"],
        }

    def export_traces_json(self, output_file=None):
        output_file = output_file or os.path.join(self.log_dir, "traces.json")
        os.makedirs(os.path.dirname(output_file) or ".", exist_ok=True)
        with open(output_file, "w", encoding="utf-8") as f:
            json.dump(self.traces, f, indent=2)
        return output_file

    def export_metrics_json(self, output_file=None):
        output_file = output_file or os.path.join(self.log_dir, "metrics.json")
        os.makedirs(os.path.dirname(output_file) or ".", exist_ok=True)
        with open(output_file, "w", encoding="utf-8") as f:
            json.dump(self.get_metrics_summary(), f, indent=2)
        return output_file
