from .ivp_solver import IVProblem, SolverConfig, SolverReport, picard_solve
from .control_synthesis import ControlLaw, ControlProblem, synthesize_control
