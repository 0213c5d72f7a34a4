# core/errors.py
"""
Error hierarchy for the time-scale fractional calculus kernel.

Every error carries the CLI exit code it maps to: 2 for invalid input or
parameters, 3 for numerical failures detected while evaluating.
"""


class FracTSError(Exception):
    """Base class for all kernel errors."""
    exit_code = 1


class DomainError(FracTSError):
    """A point or function lies outside the time scale it is used on."""
    exit_code = 2


class OrderError(FracTSError):
    """Integration endpoints are given in the wrong order."""
    exit_code = 2


class ParameterError(FracTSError):
    """An order, type or bound is outside its admissible range."""
    exit_code = 2


class ResolutionError(FracTSError):
    """The grid cannot resolve the requested evaluation."""
    exit_code = 2


class SingularWeightError(FracTSError):
    """psi^Delta vanishes where a division by it is required."""
    exit_code = 2


class PoleError(FracTSError):
    """Gamma evaluated at a non-positive integer."""
    exit_code = 2


class InputError(FracTSError):
    """An input document or CSV does not match its schema."""
    exit_code = 2


class CatalogError(FracTSError):
    """Unknown identity requested from the audit catalog."""
    exit_code = 2


class StagePropagationError(FracTSError):
    """A nested operator stage produced non-finite values."""
    exit_code = 3

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage


class EvaluationError(FracTSError):
    """A right-hand side returned a non-finite value at a node."""
    exit_code = 3


class NonInvertibleError(FracTSError):
    """The terminal functional cannot be inverted."""
    exit_code = 3
