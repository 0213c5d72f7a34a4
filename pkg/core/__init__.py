from .timescale import TimeScale, ClosedInterval, Point, Grid, build_grid
from .delta_calculus import GridFunction, PsiFunction, identity_psi
from .frac_operators import FracParams, GFactorPolicy, TaggedValue

__all__ = [
    'TimeScale', 'ClosedInterval', 'Point', 'Grid', 'build_grid',
    'GridFunction', 'PsiFunction', 'identity_psi',
    'FracParams', 'GFactorPolicy', 'TaggedValue',
]
