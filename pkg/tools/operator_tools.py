# tools/operator_tools.py
"""
Operator tools: describe-timescale, fracint and fracderiv.

Each tool takes a validated document, evaluates on the grid and writes its
CSV/JSON pair into the output directory.
"""

import os
from typing import Any, Dict, Optional, Union

import numpy as np

from core.delta_calculus import GridFunction, PsiFunction
from core.frac_operators import (
    FracParams,
    boundedness_constant,
    hilfer_boundedness_constant,
    hilfer_derivative,
    hilfer_values,
    rl_integral_left,
    rl_integral_values,
)
from core.named_forms import make_function, make_psi
from core.timescale import Grid, TimeScale, build_grid
from tools.base_tool import EXIT_NUMERICAL, BaseTool, ToolResult
from tools.data_loader import read_grid_function_csv
from tools.report_generator import FLOAT_FORMAT, write_frame_csv, write_json_report
from tools.schemas import OperatorRequest, TimeScaleDocument


class _Evaluation:
    """Time scale, grid, psi and sampled function decoded from an operator request."""

    def __init__(self, request: OperatorRequest, grid_N: int):
        self.request = request
        self.ts: TimeScale = request.timescale.build()
        self.grid: Grid = build_grid(self.ts, grid_N)
        self.psi: PsiFunction = make_psi(request.psi.name, request.psi.params)
        if request.function is not None:
            func = make_function(request.function.name, request.function.params, self.psi)
            self.f = GridFunction.sample(self.grid, func)
        else:
            self.f = read_grid_function_csv(request.function_csv, self.grid)
        self.origin = float(self.grid.t[0]) if request.origin is None else float(request.origin)

    def header(self, grid_N: int) -> Dict[str, Any]:
        return {
            "timescale": self.ts.to_dict(),
            "psi": self.request.psi.model_dump(),
            "function": self.request.function.model_dump() if self.request.function else
            {"csv": os.path.basename(self.request.function_csv)},
            "alpha": self.request.alpha,
            "origin": self.origin,
            "grid_N": grid_N,
        }


def _non_finite_nodes(values: GridFunction) -> list:
    return [float(t) for t in values.t[~np.isfinite(values.values)]]


class DescribeTimeScaleTool(BaseTool):
    def __init__(self):
        super().__init__("describe_timescale", "Summarize a time scale and tabulate its grid structure")

    async def execute(self, document: Union[TimeScaleDocument, Dict[str, Any]], grid_N: int, output_dir: str,
                      float_format: str = FLOAT_FORMAT) -> ToolResult:
        document = TimeScaleDocument.model_validate(document)
        ts = document.build()
        grid = build_grid(ts, grid_N)
        summary = dict(ts.describe(), grid_N=grid_N, node_count=grid.size)
        files = {
            "timescale": write_json_report(summary, os.path.join(output_dir, "timescale.json"), float_format),
            "nodes": write_frame_csv(grid.to_frame(), os.path.join(output_dir, "nodes.csv"), float_format),
        }
        return ToolResult(success=True, data={"files": files, "node_count": grid.size})


class FracIntegralTool(BaseTool):
    def __init__(self):
        super().__init__("fractional_integral", "Left psi-fractional integral on a time scale")

    async def execute(self, request: Union[OperatorRequest, Dict[str, Any]], grid_N: int, output_dir: str,
                      float_format: str = FLOAT_FORMAT) -> ToolResult:
        request = OperatorRequest.model_validate(request)
        ev = _Evaluation(request, grid_N)
        values = rl_integral_values(ev.f, ev.psi, request.alpha, ev.origin)
        report = ev.header(grid_N)
        report["boundedness_constant"] = boundedness_constant(ev.psi, request.alpha, ev.origin, float(values.t[-1]))
        if request.t is not None:
            report["t"] = request.t
            report["value_at_t"] = rl_integral_left(ev.ts, ev.f, ev.psi, request.alpha, ev.origin, request.t)
        flags = _non_finite_nodes(values)
        report["non_finite_nodes"] = flags
        files = {
            "fracint": write_frame_csv(values.to_frame(), os.path.join(output_dir, "fracint.csv"), float_format),
            "report": write_json_report(report, os.path.join(output_dir, "fracint.json"), float_format),
        }
        data = {"files": files, "divergence_flags": len(flags), "value_at_t": report.get("value_at_t")}
        if flags:
            return ToolResult(success=False, data=data, exit_code=EXIT_NUMERICAL,
                              error=f"fractional integral is non-finite at t={flags[0]!r}")
        return ToolResult(success=True, data=data)


class FracDerivativeTool(BaseTool):
    """
    psi-Hilfer derivative; beta = 0 gives Riemann-Liouville, beta = 1 Caputo.

    Nodes where a stage is undefined (outside the kappa-restricted scale)
    come out as NaN and are listed in the report. A non-finite value at the
    requested t is a divergence.
    """

    def __init__(self):
        super().__init__("fractional_derivative", "psi-Hilfer derivative on a time scale")

    async def execute(self, request: Union[OperatorRequest, Dict[str, Any]], grid_N: int, output_dir: str,
                      float_format: str = FLOAT_FORMAT) -> ToolResult:
        request = OperatorRequest.model_validate(request)
        ev = _Evaluation(request, grid_N)
        params = FracParams(request.alpha, request.beta or 0.0)
        values = hilfer_values(ev.f, ev.psi, params, ev.origin)
        report = ev.header(grid_N)
        report.update(beta=params.beta, n=params.n, gamma=params.gamma, mu_h=params.mu_h,
                      hilfer_boundedness_constant=hilfer_boundedness_constant(
                          ev.psi, params, ev.origin, float(values.t[-1])),
                      non_finite_nodes=_non_finite_nodes(values))
        value_at_t: Optional[float] = None
        if request.t is not None:
            value_at_t = hilfer_derivative(ev.ts, ev.f, ev.psi, params, ev.origin, request.t)
            report.update(t=request.t, value_at_t=value_at_t)
        files = {
            "fracderiv": write_frame_csv(values.to_frame(), os.path.join(output_dir, "fracderiv.csv"), float_format),
            "report": write_json_report(report, os.path.join(output_dir, "fracderiv.json"), float_format),
        }
        return ToolResult(success=True, data={"files": files, "value_at_t": value_at_t})
