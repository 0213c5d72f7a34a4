# commands/coordinator.py
"""
Command Coordinator - CLI Orchestration

Validates a RunConfig, loads and validates the input document, dispatches to
the tool behind the command and maps the outcome to an exit code:
0 success, 2 validation error, 3 numerical failure, 1 internal error.
Every command is traced by the observability plugin and logged to the JSONL
run log.
"""

import os
import uuid
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from core.errors import FracTSError
from core.named_forms import parse_psi_flag
from core.observability import ObservabilityPlugin
from solvers.ivp_solver import SolverConfig
from tools import (
    ActionLoggerTool,
    DescribeTimeScaleTool,
    FracDerivativeTool,
    FracIntegralTool,
    SolveIVPTool,
    SynthesizeControlTool,
    ToolExecutionError,
    ToolRegistry,
    ToolResult,
    VerifyIdentitiesTool,
)
from tools.base_tool import EXIT_INTERNAL, EXIT_VALIDATION, validation_message
from tools.data_loader import load_document
from tools.schemas import ControlDocument, IVPDocument, OperatorRequest, TimeScaleDocument

Command = Literal["describe-timescale", "fracint", "fracderiv", "solve-ivp", "synthesize-control", "verify"]

COMMAND_TOOLS: Dict[str, str] = {
    "describe-timescale": "describe_timescale",
    "fracint": "fractional_integral",
    "fracderiv": "fractional_derivative",
    "solve-ivp": "solve_ivp",
    "synthesize-control": "synthesize_control",
    "verify": "verify_identities",
}


class RunConfig(BaseModel):
    """One CLI invocation after merging settings file and flags."""
    model_config = ConfigDict(extra="forbid")

    command: Command
    input_path: Optional[Path] = None
    output_dir: Path = Path("output")
    grid_N: int = Field(default=64, ge=1)
    tol: float = Field(default=1e-10, gt=0)
    seed: int = 0
    max_iters: int = Field(default=200, ge=1)
    damping: float = Field(default=1.0, gt=0, le=1)
    trace_tol: float = Field(default=0.05, gt=0)
    control_max_rounds: int = Field(default=50, ge=1)
    audit_workers: int = Field(default=4, ge=1)
    log_dir: Path = Path("logs")
    float_format: str = "%.17g"
    alpha: Optional[float] = None
    beta: Optional[float] = None
    psi: Optional[str] = None
    t: Optional[float] = None

    @model_validator(mode="after")
    def _check_paths(self):
        if self.command != "verify":
            if self.input_path is None:
                raise ValueError(f"--input is required for {self.command}")
            if not self.input_path.is_file():
                raise ValueError(f"input_path does not exist: {self.input_path}")
        for name in ("output_dir", "log_dir"):
            path = getattr(self, name)
            if path.exists() and not path.is_dir():
                raise ValueError(f"{name} exists and is not a directory: {path}")
        return self

    def overrides(self) -> Dict[str, Any]:
        """Flag values that replace the matching keys of the input document."""
        out: Dict[str, Any] = {"alpha": self.alpha, "beta": self.beta, "t": self.t}
        if self.psi is not None:
            name, params = parse_psi_flag(self.psi)
            out["psi"] = {"name": name, "params": params}
        return out

    def solver_config(self) -> SolverConfig:
        return SolverConfig(grid_N=self.grid_N, max_iters=self.max_iters, tol=self.tol, damping=self.damping,
                            trace_tol=self.trace_tol)


class CommandCoordinator:
    """Dispatch a RunConfig to its tool, with observability and action logging."""

    def __init__(self, log_dir: str = "logs"):
        self.log_dir = str(log_dir)
        self.registry = ToolRegistry()
        self.registry.register(DescribeTimeScaleTool())
        self.registry.register(FracIntegralTool())
        self.registry.register(FracDerivativeTool())
        self.registry.register(SolveIVPTool())
        self.registry.register(SynthesizeControlTool())
        self.registry.register(VerifyIdentitiesTool())
        self.registry.register(ActionLoggerTool(self.log_dir))
        self.observability = ObservabilityPlugin(self.log_dir)
        self.logger = self.registry.get_tool("log_run_action")
        self.last_result: Optional[ToolResult] = None

    def _tool_arguments(self, config: RunConfig) -> Dict[str, Any]:
        out = str(config.output_dir)
        common = {"output_dir": out, "float_format": config.float_format}
        path = str(config.input_path) if config.input_path else None
        if config.command == "describe-timescale":
            document = load_document(path, TimeScaleDocument)
            return dict(common, document=document, grid_N=config.grid_N)
        if config.command in ("fracint", "fracderiv"):
            request = load_document(path, OperatorRequest, config.overrides())
            if request.function_csv and not os.path.isabs(request.function_csv):
                base = os.path.dirname(path)
                request = request.model_copy(update={"function_csv": os.path.join(base, request.function_csv)})
            return dict(common, request=request, grid_N=config.grid_N)
        overrides = config.overrides()
        overrides.pop("t")
        if config.command == "solve-ivp":
            return dict(common, document=load_document(path, IVPDocument, overrides),
                        solver_config=config.solver_config())
        if config.command == "synthesize-control":
            return dict(common, document=load_document(path, ControlDocument, overrides),
                        solver_config=config.solver_config(), max_rounds=config.control_max_rounds)
        return dict(common, seed=config.seed, workers=config.audit_workers)

    async def run(self, config: RunConfig) -> int:
        """Execute one command and return its exit code."""
        trace_id = str(uuid.uuid4())
        tool_name = COMMAND_TOOLS[config.command]
        context = {"trace_id": trace_id, "command": config.command}
        await self.observability.before_command_callback(config.command, context)
        await self.logger.execute(component="Coordinator", action="start_command",
                                  details={"command": config.command, "input": config.input_path,
                                           "grid_N": config.grid_N, "seed": config.seed})
        try:
            if tool_name not in self.registry.list_tool_names():
                raise ToolExecutionError(f"no tool registered for command '{config.command}'")
            arguments = self._tool_arguments(config)
            tool = self.registry.get_tool(tool_name)
            await self.observability.before_tool_callback(tool_name, {"command": config.command})
            result = await tool.run(**arguments)
            await self.observability.after_tool_callback(tool_name, result)
        except ValidationError as exc:
            result = ToolResult(success=False, error=validation_message(exc), exit_code=EXIT_VALIDATION)
        except FracTSError as exc:
            result = ToolResult(success=False, error=f"{type(exc).__name__}: {exc}", exit_code=exc.exit_code)
        except ToolExecutionError as exc:
            result = ToolResult(success=False, error=str(exc), exit_code=EXIT_INTERNAL)

        if not result.success:
            await self.observability.on_error_callback(result.error, context)
            await self.logger.execute(component="Coordinator", action="error",
                                      details={"command": config.command, "error": result.error,
                                               "exit_code": result.exit_code}, level="ERROR")
        await self.logger.execute(component="Coordinator", action="finish_command",
                                  details={"command": config.command, "exit_code": result.exit_code,
                                           "data": result.data})
        await self.observability.after_command_callback(config.command, context, result)
        self.observability.export_traces_json()
        self.observability.export_metrics_json()
        self.last_result = result
        return result.exit_code


async def run_command(config: RunConfig) -> int:
    return await CommandCoordinator(str(config.log_dir)).run(config)
