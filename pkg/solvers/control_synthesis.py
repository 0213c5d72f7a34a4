# solvers/control_synthesis.py
"""
Control Synthesis for the Controlled psi-Hilfer IVP

Steers D^{alpha,beta;psi} y = f(t, y) + b u(t), I^{1-gamma} y(0) = 0, to a
prescribed terminal value y(1) = y1.

The terminal functional

    W u = 1 / (g Gamma(alpha)) * int_0^1 psi^Delta(s) (psi(1) - psi(s))^(alpha-1) b u(s) Delta s

has rank one. On the grid it reads <w, u>_m with m the Delta-measure weights,
and its minimum-norm right inverse is u = w d / <w, w>_m. The drift
d = y1 - (terminal value of the uncontrolled part) depends on the controlled
trajectory, so drift and control are alternated until u settles.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.delta_calculus import GridFunction, delta_measure_weights
from core.errors import NonInvertibleError, ParameterError
from core.frac_operators import gamma_fn
from core.logging_system import StructuredLogger
from core.timescale import Grid
from solvers.ivp_solver import (
    IVProblem,
    PicardOperator,
    SolverConfig,
    SolverReport,
    run_picard,
    solution_factor,
    solution_radius,
)

logger = StructuredLogger("control_synthesis")

DEFAULT_MAX_ROUNDS = 50


@dataclass(frozen=True)
class ControlProblem:
    base: IVProblem
    b_gain: float
    target_y1: float
    M_W: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.b_gain):
            raise ParameterError(f"b_gain must be finite, got {self.b_gain}")
        if not math.isfinite(self.target_y1):
            raise ParameterError(f"target y1 must be finite, got {self.target_y1}")
        if self.M_W is not None and (not math.isfinite(self.M_W) or self.M_W < 0):
            raise ParameterError(f"M_W must be a non-negative finite number, got {self.M_W}")


@dataclass
class ControlLaw:
    """Synthesized control and its terminal verification."""
    u: GridFunction
    u_bound_Mu: Optional[float]
    terminal_value: float
    terminal_error: float
    rounds: int = 0
    converged: bool = False
    report: Optional[SolverReport] = None
    inverse_norm_sup: float = 0.0
    inverse_norm_l2: float = 0.0
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "u_bound_Mu": self.u_bound_Mu,
            "u_sup": float(np.max(np.abs(self.u.values))),
            "terminal_value": self.terminal_value,
            "terminal_error": self.terminal_error,
            "rounds": self.rounds,
            "converged": self.converged,
            "inverse_norm_sup": self.inverse_norm_sup,
            "inverse_norm_l2": self.inverse_norm_l2,
            "warnings": list(self.warnings),
            "solver": self.report.to_dict() if self.report else None,
        }


def _profile(op: PicardOperator, b_gain: float) -> Tuple[np.ndarray, np.ndarray]:
    c = op.scale * b_gain * op.W[-1]
    m = delta_measure_weights(op.grid)
    w = np.divide(c, m, out=np.zeros_like(c), where=m > 0)
    return w, m


def kernel_profile(prob: ControlProblem, grid: Grid) -> Tuple[np.ndarray, np.ndarray]:
    """Kernel weight w (so that W u = <w, u>_m) and the Delta-measure weights m."""
    return _profile(PicardOperator(prob.base, grid), prob.b_gain)


def w_functional(prob: ControlProblem, u: GridFunction) -> float:
    """Terminal value of the control term: W u at t = 1."""
    op = PicardOperator(prob.base, u.grid)
    return float(np.dot(op.scale * prob.b_gain * op.W[-1], u.values))


def _invert(w: np.ndarray, m: np.ndarray, b_gain: float) -> float:
    if b_gain == 0.0:
        raise NonInvertibleError("b_gain is zero: the terminal functional vanishes identically")
    ww = float(np.dot(m, w * w))
    if not ww > 0.0:
        raise NonInvertibleError("terminal functional has zero norm on this grid")
    return ww


def synthesize_control(prob: ControlProblem, cfg: Optional[SolverConfig] = None,
                       max_rounds: int = DEFAULT_MAX_ROUNDS) -> ControlLaw:
    cfg = cfg or SolverConfig()
    op = PicardOperator.for_config(prob.base, cfg)
    w, m = _profile(op, prob.b_gain)
    ww = _invert(w, m, prob.b_gain)
    direction = w / ww

    u = np.zeros(op.grid.size)
    y = None
    rounds = 0
    settled = False
    for rounds in range(1, max_rounds + 1):
        report = run_picard(op, cfg, forcing=prob.b_gain * u, start=y)
        y = report.solution.values
        drift = op.scale * float(np.dot(op.W[-1], op.evaluate_rhs(y)))
        update = direction * (prob.target_y1 - drift)
        change = float(np.max(np.abs(update - u)))
        u = update
        logger.debug("control round", round=rounds, drift=drift, change=change)
        if change <= cfg.tol * (1.0 + float(np.max(np.abs(u)))):
            settled = True
            break

    final = run_picard(op, cfg, forcing=prob.b_gain * u, start=y)
    terminal = final.terminal_value
    law = ControlLaw(
        u=GridFunction(op.grid, u),
        u_bound_Mu=None,
        terminal_value=terminal,
        terminal_error=abs(terminal - prob.target_y1),
        rounds=rounds,
        converged=settled and final.converged,
        report=final,
        inverse_norm_sup=float(np.max(np.abs(w))) / ww,
        inverse_norm_l2=1.0 / math.sqrt(ww),
    )
    if not settled:
        law.warnings.append(f"control did not settle within {max_rounds} rounds")
        logger.warning("control synthesis did not settle", rounds=rounds)
    if prob.base.bound_M is not None and prob.M_W is not None:
        law.u_bound_Mu = control_bound(prob, law)
    return law


def control_bound(prob: ControlProblem, law: Optional[ControlLaw] = None) -> float:
    """M_W (|y1| + M (psi(1) - psi(0))^alpha / (g Gamma(alpha + 1)))."""
    base = prob.base
    if base.bound_M is None or prob.M_W is None:
        raise ParameterError("control bound needs both M and M_W")
    alpha = base.params.alpha
    g = solution_factor(base)
    return prob.M_W * (abs(prob.target_y1) + base.bound_M * base.psi_span ** alpha / (g * gamma_fn(alpha + 1.0)))


def controllability_condition(prob: ControlProblem) -> Tuple[float, bool]:
    """Left-hand side of the controllability condition and whether it is < 1."""
    value = solution_radius(prob.base)
    return value, value < 1.0
