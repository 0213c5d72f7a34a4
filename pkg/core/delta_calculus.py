# core/delta_calculus.py
"""
Delta Calculus on Grids

Sampled functions (GridFunction), weight functions (PsiFunction), delta
derivatives, delta integrals, the weighted C_{1-gamma,psi} norm and the
singular-kernel product quadrature shared by every fractional operator.

Quadrature conventions:
- A delta integral over [a, b) adds f(s) * mu(s) for every right-scattered
  node s in [a, b) and a composite trapezoid over each continuous panel.
- The weakly singular kernel (psi(t) - psi(s))^(alpha-1) is integrated by
  product integration: f is interpolated linearly in the psi-coordinate and
  the kernel moments are integrated in closed form on every panel.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Union

import numpy as np
import pandas as pd
from scipy import interpolate

from core.errors import DomainError, OrderError, ParameterError, ResolutionError, SingularWeightError
from core.logging_system import StructuredLogger
from core.timescale import Grid, TimeScale, kappa_restrict

logger = StructuredLogger("delta_calculus")

ArrayFn = Callable[[np.ndarray], np.ndarray]

_ROW_CHUNK = 256
MAX_SPLINE_DEGREE = 7
MAX_SPLINE_PIECES = 48


@dataclass(frozen=True)
class PsiFunction:
    """
    Strictly increasing weight function psi with its classical derivative.

    ``inverse`` is optional and only needed by the conjugation oracle.
    """
    func: ArrayFn
    derivative: ArrayFn
    label: str = "psi"
    inverse: Optional[ArrayFn] = None

    def __call__(self, t):
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)

    def prime(self, t):
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(np.asarray(self.derivative(t), dtype=float), t.shape).copy()

    def invert(self, u):
        if self.inverse is None:
            raise ParameterError(f"psi '{self.label}' has no inverse; conjugation needs one")
        return np.asarray(self.inverse(np.asarray(u, dtype=float)), dtype=float)

    def validate(self, grid: Grid) -> np.ndarray:
        """Return psi at the grid nodes after checking strict monotonicity."""
        u = np.broadcast_to(self(grid.t), grid.t.shape).astype(float)
        bad = np.flatnonzero(~np.isfinite(u))
        if bad.size:
            raise DomainError(f"psi '{self.label}' is not finite at node t={grid.t[bad[0]]!r}")
        bad = np.flatnonzero(np.diff(u) <= 0)
        if bad.size:
            i = bad[0]
            raise DomainError(
                f"psi '{self.label}' is not strictly increasing between nodes "
                f"t={grid.t[i]!r} and t={grid.t[i + 1]!r}"
            )
        panel = grid.panel_mask
        if panel.any():
            d = self.prime(grid.t[panel])
            flat = np.flatnonzero(d <= 0)
            if flat.size:
                logger.warning(
                    "psi derivative vanishes at panel nodes",
                    psi=self.label, nodes=int(flat.size), first_t=float(grid.t[panel][flat[0]]),
                )
        return u

    def delta_values(self, grid: Grid, u: Optional[np.ndarray] = None) -> np.ndarray:
        """psi^Delta at every node: difference quotient when scattered, psi' otherwise."""
        u = self.validate(grid) if u is None else u
        out = self.prime(grid.t)
        idx = np.flatnonzero(grid.right_scattered)
        out[idx] = (u[idx + 1] - u[idx]) / grid.mu[idx]
        return out


def identity_psi() -> PsiFunction:
    return PsiFunction(lambda t: t, lambda t: np.ones_like(t), "identity", lambda u: u)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Function sampled at the nodes of a grid; values are read-only."""
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != self.grid.t.shape:
            raise DomainError(
                f"expected {self.grid.size} values aligned to grid nodes, got shape {vals.shape}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def sample(cls, grid: Grid, func: Callable) -> "GridFunction":
        vals = np.asarray(func(grid.t), dtype=float)
        if vals.ndim == 0:
            vals = np.full(grid.size, float(vals))
        return cls(grid, vals)

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "GridFunction":
        return cls(grid, np.full(grid.size, float(value)))

    @property
    def t(self) -> np.ndarray:
        return self.grid.t

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, values)

    def value_at_node(self, t: float) -> float:
        return float(self.values[self.grid.index_of(t)])

    def at(self, t: float, psi: Optional[PsiFunction] = None) -> float:
        """Evaluate at t; between panel nodes interpolate linearly in psi."""
        t = float(t)
        self.grid.timescale.locate(t)
        pos = int(np.searchsorted(self.grid.t, t))
        for cand in (pos - 1, pos):
            if 0 <= cand < self.grid.size and abs(self.grid.t[cand] - t) <= 1e-12:
                return float(self.values[cand])
        left = pos - 1
        if left < 0 or pos >= self.grid.size or self.grid.component_of[left] != self.grid.component_of[pos]:
            raise DomainError(f"t={t!r} is not between two panel nodes")
        psi = psi or identity_psi()
        u0, u1, ut = (float(psi(x)) for x in (self.grid.t[left], self.grid.t[pos], t))
        weight = (ut - u0) / (u1 - u0)
        return float((1.0 - weight) * self.values[left] + weight * self.values[pos])

    def subgrid(self, lo: float, hi: float) -> "GridFunction":
        sub = self.grid.subgrid(lo, hi)
        if sub is self.grid:
            return self
        start = self.grid.index_of(lo)
        return GridFunction(sub, self.values[start:start + sub.size])

    def to_frame(self, value_label: str = "value") -> pd.DataFrame:
        return pd.DataFrame({"t": self.grid.t, value_label: self.values})

    def _other_values(self, other: Union["GridFunction", float]) -> np.ndarray:
        if isinstance(other, GridFunction):
            if other.grid is not self.grid and not np.array_equal(other.grid.t, self.grid.t):
                raise DomainError("grid functions live on different grids")
            return other.values
        return np.full(self.grid.size, float(other))

    def __add__(self, other):
        return self.with_values(self.values + self._other_values(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.with_values(self.values - self._other_values(other))

    def __mul__(self, other):
        return self.with_values(self.values * self._other_values(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)


def check_scale(ts: TimeScale, f: GridFunction) -> None:
    if f.grid.timescale != ts:
        raise DomainError("function is sampled on a different time scale than the one given")


def _stencil(values: np.ndarray, coord: np.ndarray, grid: Grid) -> np.ndarray:
    out = np.full(grid.size, np.nan)
    for start, stop in grid.interval_segments:
        seg = slice(start, stop)
        edge = 2 if stop - start >= 3 else 1
        out[seg] = np.gradient(values[seg], coord[seg], edge_order=edge)
    idx = np.flatnonzero(grid.right_scattered)
    out[idx] = (values[idx + 1] - values[idx]) / (coord[idx + 1] - coord[idx])
    return out


def delta_derivative_values(f: GridFunction) -> GridFunction:
    """Delta derivative at every node; NaN where no stencil exists (outside T^kappa)."""
    return f.with_values(_stencil(f.values, f.grid.t, f.grid))


def psi_delta_derivative_values(f: GridFunction, psi: PsiFunction, order: int = 1) -> GridFunction:
    """
    k-fold (Delta / psi^Delta) derivative at every node.

    Right-dense nodes use a second-order stencil in the psi-coordinate, which
    stays finite where psi' vanishes at a single node.
    """
    u = psi.validate(f.grid)
    values = f.values
    for _ in range(int(order)):
        values = _stencil(values, u, f.grid)
    return f.with_values(values)


def _spline_degree(order: int, nodes: int) -> int:
    """Odd degree above ``order``, capped at 7 and at what the segment supports."""
    degree = min(max(order + 1 + order % 2, 3), MAX_SPLINE_DEGREE)
    while degree >= nodes:
        degree -= 2
    return degree


def _segment_spline(x: np.ndarray, y: np.ndarray, degree: int) -> interpolate.BSpline:
    """Interpolate short segments; least-squares fit on at most MAX_SPLINE_PIECES pieces otherwise."""
    if x.size <= MAX_SPLINE_PIECES + degree:
        return interpolate.make_interp_spline(x, y, k=degree)
    breaks = x[np.linspace(0, x.size - 1, MAX_SPLINE_PIECES + 1).round().astype(int)]
    knots = np.concatenate([np.repeat(x[0], degree + 1), breaks[1:-1], np.repeat(x[-1], degree + 1)])
    return interpolate.make_lsq_spline(x, y, knots, k=degree)


def psi_delta_derivative_stack(f: GridFunction, psi: PsiFunction, K: int) -> List[GridFunction]:
    """
    f and its (Delta / psi^Delta)^k derivatives for k = 1..K.

    Continuous segments differentiate one spline fitted in the
    psi-coordinate, so higher orders do not amplify rounding the way
    repeated difference stencils do. Right-scattered nodes keep the exact
    difference quotient of the previous order. Segments too short for a
    cubic fall back to the stencil.
    """
    grid = f.grid
    u = psi.validate(grid)
    splines = []
    for start, stop in grid.interval_segments:
        seg = slice(start, stop)
        degree = _spline_degree(K, stop - start)
        if degree >= 3 and np.all(np.isfinite(f.values[seg])):
            # offset keeps constant segments exactly flat
            splines.append(_segment_spline(u[seg], f.values[seg] - f.values[start], degree))
        else:
            splines.append(None)
    stack = [f]
    previous = f.values
    idx = np.flatnonzero(grid.right_scattered)
    for k in range(1, K + 1):
        out = np.full(grid.size, np.nan)
        for (start, stop), spline in zip(grid.interval_segments, splines):
            seg = slice(start, stop)
            if spline is not None:
                out[seg] = spline(u[seg], nu=k) if k <= spline.k else 0.0
            else:
                edge = 2 if stop - start >= 3 else 1
                out[seg] = np.gradient(previous[seg], u[seg], edge_order=edge)
        out[idx] = (previous[idx + 1] - previous[idx]) / (u[idx + 1] - u[idx])
        stack.append(f.with_values(out))
        previous = out
    return stack


def _point_derivative(ts: TimeScale, f: GridFunction, t: float, values: np.ndarray) -> float:
    if not kappa_restrict(ts).contains(t):
        raise DomainError(f"t={t!r} lies outside T^kappa")
    value = float(values[f.grid.index_of(t)])
    if not np.isfinite(value):
        raise ResolutionError(f"insufficient neighboring nodes to differentiate at t={t!r}")
    return value


def delta_derivative(ts: TimeScale, f: GridFunction, t: float) -> float:
    check_scale(ts, f)
    return _point_derivative(ts, f, t, delta_derivative_values(f).values)


def psi_delta_derivative(ts: TimeScale, f: GridFunction, psi: PsiFunction, t: float) -> float:
    check_scale(ts, f)
    grid = f.grid
    u = psi.validate(grid)
    i = grid.index_of(t)
    if grid.right_scattered[i]:
        return float((f.values[i + 1] - f.values[i]) / (u[i + 1] - u[i]))
    slope = float(psi.prime(t))
    if slope == 0.0:
        raise SingularWeightError(f"psi^Delta vanishes at t={t!r}")
    return delta_derivative(ts, f, t) / slope


def delta_measure_weights(grid: Grid, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Weights w with sum(w * f) equal to the delta integral over [t[start], t[stop])."""
    stop = grid.size - 1 if stop is None else stop
    w = np.zeros(grid.size)
    left = grid.panel_left
    left = left[(left >= start) & (left + 1 <= stop)]
    half = 0.5 * (grid.t[left + 1] - grid.t[left])
    w[left] += half
    w[left + 1] += half
    idx = np.flatnonzero(grid.right_scattered)
    idx = idx[(idx >= start) & (idx < stop)]
    w[idx] += grid.mu[idx]
    return w


def apply_weights(weights: np.ndarray, values: np.ndarray) -> np.ndarray:
    """weights @ values, with NaN confined to rows that actually use a NaN node."""
    values = np.asarray(values, dtype=float)
    bad = ~np.isfinite(values)
    if not bad.any():
        return weights @ values
    out = weights @ np.where(bad, 0.0, values)
    touched = (weights[:, bad] != 0).any(axis=1)
    out[touched] = np.nan
    return out


def delta_integral(ts: TimeScale, f: GridFunction, a: float, b: float) -> float:
    check_scale(ts, f)
    if a > b:
        raise OrderError(f"delta integral needs a <= b, got a={a!r} > b={b!r}")
    ia, ib = f.grid.index_of(a), f.grid.index_of(b)
    w = delta_measure_weights(f.grid, ia, ib)
    return float(apply_weights(w[None, :], f.values)[0])


def weighted_norm(f: GridFunction, psi: PsiFunction, gamma: float, origin: float) -> float:
    """sup over nodes t > origin of |(psi(t) - psi(origin))^(1-gamma) f(t)|."""
    if not 0.0 <= gamma <= 1.0:
        raise ParameterError(f"gamma must lie in [0, 1], got {gamma}")
    grid = f.grid
    io = grid.index_of(origin)
    u = np.broadcast_to(psi(grid.t), grid.t.shape)
    weight = (u[io + 1:] - u[io]) ** (1.0 - gamma)
    terms = np.abs(weight * f.values[io + 1:])
    if gamma == 1.0:
        terms = np.concatenate([[abs(f.values[io])], terms])
    return float(np.max(terms)) if terms.size else 0.0


def _chunks(rows: np.ndarray):
    for start in range(0, rows.size, _ROW_CHUNK):
        yield slice(start, start + _ROW_CHUNK), rows[start:start + _ROW_CHUNK]


def kernel_weight_matrix(grid: Grid, u: np.ndarray, alpha: float, rows: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Weights W with (W @ f)[r] = int_{t_0}^{t_r} psi^Delta(s) (psi(t_r) - psi(s))^(alpha-1) f(s) Delta s.

    The integral starts at the first grid node. Scattered nodes contribute
    (psi(sigma(s)) - psi(s)) (psi(t) - psi(s))^(alpha-1); panels use the exact
    kernel moments against linear interpolation in psi.
    """
    if alpha <= 0:
        raise ParameterError(f"kernel order must be positive, got alpha={alpha}")
    rows = np.arange(grid.size) if rows is None else np.asarray(rows, dtype=int)
    W = np.zeros((rows.size, grid.size))
    left = grid.panel_left
    right = left + 1
    h = u[right] - u[left]
    scattered = np.flatnonzero(grid.right_scattered)
    jump = u[scattered + 1] - u[scattered]

    for block, r in _chunks(rows):
        U = u[r][:, None]
        if left.size:
            active = right[None, :] <= r[:, None]
            A = np.where(active, U - u[left][None, :], 0.0)
            B = np.where(active, U - u[right][None, :], 0.0)
            m0 = (A ** alpha - B ** alpha) / alpha
            m1 = A * m0 - (A ** (alpha + 1.0) - B ** (alpha + 1.0)) / (alpha + 1.0)
            W[block, left] += np.where(active, m0 - m1 / h, 0.0)
            W[block, right] += np.where(active, m1 / h, 0.0)
        if scattered.size:
            active = scattered[None, :] < r[:, None]
            D = np.where(active, U - u[scattered][None, :], 1.0)
            W[block, scattered] += np.where(active, jump[None, :] * D ** (alpha - 1.0), 0.0)
    return W


def right_kernel_weight_matrix(grid: Grid, u: np.ndarray, alpha: float, rows: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Mirror of kernel_weight_matrix for the right-sided integral over (t_r, b),
    b the last grid node: (W @ f)[r] = int psi^Delta(s) (psi(s) - psi(t_r))^(alpha-1) f(s) Delta s.
    The scattered term at s = t_r is excluded.
    """
    if alpha <= 0:
        raise ParameterError(f"kernel order must be positive, got alpha={alpha}")
    rows = np.arange(grid.size) if rows is None else np.asarray(rows, dtype=int)
    W = np.zeros((rows.size, grid.size))
    left = grid.panel_left
    right = left + 1
    h = u[right] - u[left]
    scattered = np.flatnonzero(grid.right_scattered)
    jump = u[scattered + 1] - u[scattered]

    for block, r in _chunks(rows):
        U = u[r][:, None]
        if left.size:
            active = left[None, :] >= r[:, None]
            A = np.where(active, u[right][None, :] - U, 0.0)
            B = np.where(active, u[left][None, :] - U, 0.0)
            m0 = (A ** alpha - B ** alpha) / alpha
            m1 = A * m0 - (A ** (alpha + 1.0) - B ** (alpha + 1.0)) / (alpha + 1.0)
            W[block, right] += np.where(active, m0 - m1 / h, 0.0)
            W[block, left] += np.where(active, m1 / h, 0.0)
        if scattered.size:
            active = scattered[None, :] > r[:, None]
            D = np.where(active, u[scattered][None, :] - U, 1.0)
            W[block, scattered] += np.where(active, jump[None, :] * D ** (alpha - 1.0), 0.0)
    return W


def singular_kernel_integral(ts: TimeScale, f: GridFunction, psi: PsiFunction, t: float, alpha: float, a: float) -> float:
    """int_a^t psi^Delta(s) (psi(t) - psi(s))^(alpha-1) f(s) Delta s, without 1/Gamma(alpha)."""
    check_scale(ts, f)
    if alpha <= 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    if t < a:
        raise OrderError(f"singular kernel integral needs a <= t, got a={a!r} > t={t!r}")
    sub = f.subgrid(a, t)
    u = psi.validate(sub.grid)
    row = kernel_weight_matrix(sub.grid, u, alpha, rows=np.array([sub.grid.size - 1]))
    return float(apply_weights(row, sub.values)[0])
