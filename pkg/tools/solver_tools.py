# tools/solver_tools.py
"""
Solver tools: solve-ivp and synthesize-control.

Non-convergence is not an exception: the report is still written and the
tool result carries exit code 3.
"""

import os
from typing import Any, Dict, Union

from core.frac_operators import FracParams
from core.named_forms import make_psi, make_rhs
from solvers.control_synthesis import (
    ControlProblem,
    control_bound,
    controllability_condition,
    synthesize_control,
)
from solvers.ivp_solver import IVProblem, SolverConfig, picard_solve
from tools.base_tool import EXIT_NUMERICAL, BaseTool, ToolResult
from tools.report_generator import FLOAT_FORMAT, write_frame_csv, write_json_report
from tools.schemas import ControlDocument, IVPDocument


def build_problem(document: IVPDocument) -> IVProblem:
    """IVP from its document; L and M default to the bounds the named rhs declares."""
    rhs = make_rhs(document.rhs.name, document.rhs.params)
    return IVProblem(
        ts=document.timescale.build(),
        psi=make_psi(document.psi.name, document.psi.params),
        params=FracParams(document.alpha, document.beta),
        rhs=rhs,
        lipschitz_L=document.L if document.L is not None else rhs.lipschitz,
        bound_M=document.M if document.M is not None else rhs.bound,
        label=rhs.label,
    )


def _problem_echo(document: IVPDocument, prob: IVProblem) -> Dict[str, Any]:
    return {
        "alpha": prob.params.alpha,
        "beta": prob.params.beta,
        "gamma": prob.params.gamma,
        "psi": document.psi.model_dump(),
        "rhs": document.rhs.model_dump(),
        "L": prob.lipschitz_L,
        "M": prob.bound_M,
        "timescale": document.timescale.model_dump(),
    }


class SolveIVPTool(BaseTool):
    def __init__(self):
        super().__init__("solve_ivp", "Picard solver for the psi-Hilfer initial value problem on [0, 1]")

    async def execute(self, document: Union[IVPDocument, Dict[str, Any]], solver_config: SolverConfig, output_dir: str,
                      float_format: str = FLOAT_FORMAT) -> ToolResult:
        document = IVPDocument.model_validate(document)
        prob = build_problem(document)
        report = picard_solve(prob, solver_config)
        files = {
            "solution": write_frame_csv(report.solution.to_frame(), os.path.join(output_dir, "solution.csv"),
                                        float_format),
            "report": write_json_report(dict(report.to_dict(), problem=_problem_echo(document, prob)),
                                        os.path.join(output_dir, "report.json"), float_format),
        }
        data = {
            "files": files,
            "iterations": report.iterations,
            "converged": report.converged,
            "terminal_value": report.terminal_value,
            "divergence_flags": 0 if report.converged else 1,
        }
        if not report.converged:
            return ToolResult(success=False, data=data, exit_code=EXIT_NUMERICAL,
                              error=report.warnings[-1] if report.warnings else "Picard iteration did not converge")
        return ToolResult(success=True, data=data)


class SynthesizeControlTool(BaseTool):
    def __init__(self):
        super().__init__("synthesize_control", "Control steering the IVP solution to y(1) = y1")

    async def execute(self, document: Union[ControlDocument, Dict[str, Any]], solver_config: SolverConfig, output_dir: str,
                      max_rounds: int, float_format: str = FLOAT_FORMAT) -> ToolResult:
        document = ControlDocument.model_validate(document)
        base = build_problem(document)
        prob = ControlProblem(base, document.b_gain, document.y1, document.M_W)
        law = synthesize_control(prob, solver_config, max_rounds)
        report = dict(law.to_dict(), problem=dict(_problem_echo(document, base), b_gain=document.b_gain,
                                                  y1=document.y1, M_W=document.M_W))
        if base.bound_M is not None:
            value, holds = controllability_condition(prob)
            report["controllability"] = {"value": value, "holds": holds}
            if prob.M_W is not None:
                report["control_bound"] = control_bound(prob)
        frame = law.u.to_frame("u")
        files = {
            "control": write_frame_csv(frame, os.path.join(output_dir, "control.csv"), float_format),
            "report": write_json_report(report, os.path.join(output_dir, "control_report.json"), float_format),
        }
        data = {
            "files": files,
            "iterations": law.report.iterations if law.report else 0,
            "rounds": law.rounds,
            "terminal_error": law.terminal_error,
            "converged": law.converged,
            "divergence_flags": 0 if law.converged else 1,
        }
        if not law.converged:
            return ToolResult(success=False, data=data, exit_code=EXIT_NUMERICAL,
                              error=law.warnings[-1] if law.warnings else "control synthesis did not converge")
        return ToolResult(success=True, data=data)
