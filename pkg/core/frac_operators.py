# core/frac_operators.py
"""
psi-Fractional Operators on Time Scales

Left and right Riemann-Liouville-type integrals, the psi-Hilfer derivative
with its Riemann-Liouville (beta = 0) and Caputo (beta = 1) members, the
time-scale Beta function and g-factor, closed forms, series and Leibniz
expansions, reconstruction and the audit helpers built on them.

Nested operators are evaluated stage by stage: every intermediate stage is
materialized on the whole grid before the next one runs, so a non-finite
result can be attributed to the stage that produced it.
"""

import math
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy import integrate, special

from core.delta_calculus import (
    GridFunction,
    PsiFunction,
    apply_weights,
    check_scale,
    delta_measure_weights,
    kernel_weight_matrix,
    psi_delta_derivative_stack,
    psi_delta_derivative_values,
    right_kernel_weight_matrix,
    singular_kernel_integral,
)
from core.errors import (
    DomainError,
    OrderError,
    ParameterError,
    PoleError,
    ResolutionError,
    SingularWeightError,
    StagePropagationError,
)
from core.logging_system import StructuredLogger
from core.timescale import SNAP_TOLERANCE, ClosedInterval, Point, TimeScale, sigma

logger = StructuredLogger("frac_operators")

BOUNDARY_LIMIT = 1e12


@dataclass(frozen=True)
class FracParams:
    """
    Order alpha and type beta of the operator family.

    n defaults to ceil(alpha). The closed top alpha = n is admitted so that
    alpha = 1 reproduces the classical derivative.
    """
    alpha: float
    beta: float = 0.0
    n: int = 0

    def __post_init__(self):
        alpha, beta = float(self.alpha), float(self.beta)
        if not math.isfinite(alpha) or alpha <= 0:
            raise ParameterError(f"alpha must be a positive finite number, got {alpha}")
        n = int(self.n) if self.n else math.ceil(alpha)
        if not n - 1 < alpha <= n:
            raise ParameterError(f"alpha={alpha} must lie in (n-1, n] for n={n}")
        if not 0.0 <= beta <= 1.0:
            raise ParameterError(f"beta must lie in [0, 1], got {beta}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "n", n)

    @classmethod
    def of(cls, alpha: float, beta: float = 0.0) -> "FracParams":
        return cls(alpha, beta)

    @property
    def gamma(self) -> float:
        return min(self.alpha + self.beta * (self.n - self.alpha), float(self.n))

    @property
    def mu_h(self) -> float:
        return min(self.n * (1.0 - self.beta) + self.beta * self.alpha, float(self.n))

    @property
    def inner_order(self) -> float:
        return (1.0 - self.beta) * (self.n - self.alpha)

    @property
    def outer_order(self) -> float:
        return self.beta * (self.n - self.alpha)

    def to_dict(self) -> Dict[str, float]:
        return {"alpha": self.alpha, "beta": self.beta, "n": self.n, "gamma": self.gamma, "mu_h": self.mu_h}


Order = Union[float, FracParams]


@dataclass(frozen=True)
class TaggedValue:
    """A value that may be flagged divergent instead of raising."""
    value: float
    divergent: bool = False
    reason: str = ""

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "divergent": self.divergent, "reason": self.reason}


@dataclass
class GFactorPolicy:
    """
    Resolution record for g^T(p, q).

    ``mode`` holds the outcome of the latest resolution; every fallback
    appends a message to ``warning_log`` under a lock.
    """
    allow_computed: bool = True
    mode: str = "computed"
    warning_log: List[str] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def record_computed(self) -> None:
        with self._lock:
            self.mode = "computed"

    def record_fallback(self, message: str) -> float:
        with self._lock:
            self.mode = "unit-fallback"
            repeated = message in self.warning_log
            self.warning_log.append(message)
        if not repeated:
            logger.warning("g-factor falls back to 1", reason=message)
        return 1.0


def gamma_fn(x: float) -> float:
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at x={x}")
    return float(special.gamma(x))


def beta_classical(p: float, q: float) -> float:
    return float(special.beta(p, q))


def binom_neg(alpha: float, k: int) -> float:
    """binom(-alpha, k) = (-1)^k Gamma(alpha + k) / (Gamma(alpha) Gamma(k + 1))."""
    for x in (alpha, alpha + k):
        if x <= 0 and x == math.floor(x):
            raise PoleError(f"binomial coefficient hits a Gamma pole at {x}")
    log_mag = special.gammaln(alpha + k) - special.gammaln(alpha) - special.gammaln(k + 1.0)
    sign = (-1.0) ** k * special.gammasgn(alpha + k) * special.gammasgn(alpha)
    return float(sign * math.exp(log_mag))


def _order_of(order: Order) -> float:
    value = order.alpha if isinstance(order, FracParams) else float(order)
    if not math.isfinite(value) or value < 0:
        raise ParameterError(f"order must be a non-negative finite number, got {value}")
    return value


def _pow(base: float, exponent: float) -> float:
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(np.power(float(base), float(exponent)))


# ----- integrals -----

def rl_integral_values(f: GridFunction, psi: PsiFunction, order: Order, a: Optional[float] = None) -> GridFunction:
    """Left integral I^order_{a+} f at every node t >= a."""
    alpha = _order_of(order)
    sub = f.subgrid(f.grid.t[0] if a is None else a, f.grid.t[-1])
    if alpha == 0.0:
        return sub
    u = psi.validate(sub.grid)
    W = kernel_weight_matrix(sub.grid, u, alpha)
    return sub.with_values(apply_weights(W, sub.values) / gamma_fn(alpha))


def right_integral_values(f: GridFunction, psi: PsiFunction, order: Order, b: Optional[float] = None) -> GridFunction:
    """Right integral I^order_{b-} f at every node t <= b."""
    alpha = _order_of(order)
    sub = f.subgrid(f.grid.t[0], f.grid.t[-1] if b is None else b)
    if alpha == 0.0:
        return sub
    u = psi.validate(sub.grid)
    W = right_kernel_weight_matrix(sub.grid, u, alpha)
    return sub.with_values(apply_weights(W, sub.values) / gamma_fn(alpha))


def rl_integral_left(ts: TimeScale, f: GridFunction, psi: PsiFunction, p: Order, a: float, t: float) -> float:
    check_scale(ts, f)
    alpha = _order_of(p)
    if t < a:
        raise OrderError(f"left integral needs a <= t, got a={a!r} > t={t!r}")
    if alpha == 0.0:
        return f.value_at_node(t)
    return singular_kernel_integral(ts, f, psi, t, alpha, a) / gamma_fn(alpha)


def rl_integral_right(ts: TimeScale, f: GridFunction, psi: PsiFunction, order: Order, t: float, b: float) -> float:
    check_scale(ts, f)
    alpha = _order_of(order)
    if t > b:
        raise OrderError(f"right integral needs t <= b, got t={t!r} > b={b!r}")
    if alpha == 0.0:
        return f.value_at_node(t)
    sub = f.subgrid(t, b)
    u = psi.validate(sub.grid)
    row = right_kernel_weight_matrix(sub.grid, u, alpha, rows=np.array([0]))
    return float(apply_weights(row, sub.values)[0]) / gamma_fn(alpha)


# ----- staged derivatives -----

Stage = Tuple[str, str, float]


def _hilfer_stages(p: FracParams) -> List[Stage]:
    return [
        (f"I^{p.inner_order:g}", "integral", p.inner_order),
        (f"(Delta/psi^Delta)^{p.n}", "derivative", p.n),
        (f"I^{p.outer_order:g}", "integral", p.outer_order),
    ]


def _require_stencils(grid, n: int) -> None:
    for start, stop in grid.interval_segments:
        if stop - start < n + 1:
            raise ResolutionError(
                f"interval starting at t={grid.t[start]!r} has {stop - start} nodes; "
                f"a {n}-fold derivative needs at least {n + 1}"
            )


def _run_stages(f: GridFunction, psi: PsiFunction, stages: List[Stage]) -> List[Tuple[str, GridFunction]]:
    history = []
    current = f
    for label, kind, amount in stages:
        if kind == "integral":
            current = rl_integral_values(current, psi, amount)
        else:
            current = psi_delta_derivative_values(current, psi, int(amount))
        history.append((label, current))
    return history


def _blame(history: List[Tuple[str, GridFunction]], index: int) -> Optional[str]:
    """Earliest stage with a non-finite value at or before node ``index``."""
    for label, stage in history:
        if not np.all(np.isfinite(stage.values[:index + 1])):
            return label
    return None


def _staged_values(f: GridFunction, psi: PsiFunction, stages: List[Stage], n: int, a: Optional[float]) -> List[Tuple[str, GridFunction]]:
    sub = f.subgrid(f.grid.t[0] if a is None else a, f.grid.t[-1])
    _require_stencils(sub.grid, n)
    return _run_stages(sub, psi, stages)


def _staged_point(ts: TimeScale, f: GridFunction, psi: PsiFunction, stages: List[Stage], n: int, a: float, t: float) -> float:
    check_scale(ts, f)
    if t < a:
        raise OrderError(f"derivative needs a <= t, got a={a!r} > t={t!r}")
    *inner, (label, _, outer) = stages
    history = _staged_values(f, psi, inner, n, a)
    stage = history[-1][1]
    grid = stage.grid
    i = grid.index_of(t)
    if outer == 0.0:
        value = float(stage.values[i])
    else:
        u = psi.validate(grid)
        row = kernel_weight_matrix(grid, u, outer, rows=np.array([i]))
        value = float(apply_weights(row, stage.values)[0]) / gamma_fn(outer)
    if not math.isfinite(value):
        raise StagePropagationError(_blame(history, i) or label, f"non-finite value at t={t!r}")
    return value


def hilfer_values(f: GridFunction, psi: PsiFunction, p: FracParams, a: Optional[float] = None) -> GridFunction:
    """Hilfer derivative at every node t >= a; NaN where a stage is undefined."""
    return _staged_values(f, psi, _hilfer_stages(p), p.n, a)[-1][1]


def hilfer_derivative(ts: TimeScale, f: GridFunction, psi: PsiFunction, p: FracParams, a: float, t: float) -> float:
    """I^{beta(n-alpha)} (Delta/psi^Delta)^n I^{n-gamma} f evaluated at t."""
    return _staged_point(ts, f, psi, _hilfer_stages(p), p.n, a, t)


def rl_derivative(ts: TimeScale, f: GridFunction, psi: PsiFunction, order: float, a: float, t: float) -> float:
    return hilfer_derivative(ts, f, psi, FracParams(_order_of(order), 0.0), a, t)


def caputo_derivative(ts: TimeScale, f: GridFunction, psi: PsiFunction, order: float, a: float, t: float) -> float:
    return hilfer_derivative(ts, f, psi, FracParams(_order_of(order), 1.0), a, t)


def rl_derivative_values(f: GridFunction, psi: PsiFunction, order: float, a: Optional[float] = None) -> GridFunction:
    return hilfer_values(f, psi, FracParams(_order_of(order), 0.0), a)


def caputo_derivative_values(f: GridFunction, psi: PsiFunction, order: float, a: Optional[float] = None) -> GridFunction:
    return hilfer_values(f, psi, FracParams(_order_of(order), 1.0), a)


def hilfer_via_rl(f: GridFunction, psi: PsiFunction, p: FracParams, a: Optional[float] = None) -> GridFunction:
    """I^{gamma-alpha} applied to the Riemann-Liouville derivative of order gamma."""
    rl = rl_derivative_values(f, psi, p.gamma, a)
    return rl_integral_values(rl, psi, p.gamma - p.alpha)


def hilfer_via_caputo(f: GridFunction, psi: PsiFunction, p: FracParams, a: Optional[float] = None) -> GridFunction:
    """Caputo derivative of order mu_H applied to I^{n-gamma} f."""
    inner = rl_integral_values(f, psi, p.n - p.gamma, a)
    return caputo_derivative_values(inner, psi, p.mu_h)


# ----- closed forms and expansions -----

def power_rule(psi: PsiFunction, p: Order, a: float, delta: float, t: float) -> float:
    """Gamma(delta) / Gamma(delta - alpha) * (psi(t) - psi(a))^(delta - alpha - 1)."""
    alpha = _order_of(p)
    if delta <= 1:
        raise ParameterError(f"power rule needs delta > 1, got {delta}")
    base = float(psi(t)) - float(psi(a))
    if base < 0:
        raise OrderError(f"power rule needs psi(t) >= psi(a), got t={t!r} < a={a!r}")
    return gamma_fn(delta) / gamma_fn(delta - alpha) * _pow(base, delta - alpha - 1.0)


def _check_truncation(K: int) -> int:
    if int(K) != K or K < 0:
        raise ParameterError(f"truncation K must be a non-negative integer, got {K}")
    return int(K)


def series_expansion(ts: TimeScale, f: GridFunction, psi: PsiFunction, order: Order, a: float, t: float, K: int) -> float:
    """Truncated expansion of I^alpha f(t) in psi-delta derivatives of f at t."""
    check_scale(ts, f)
    K = _check_truncation(K)
    alpha = _order_of(order)
    base = float(psi(t)) - float(psi(a))
    if base < 0:
        raise OrderError(f"series expansion needs a <= t, got a={a!r} > t={t!r}")
    i = f.grid.index_of(t)
    total = 0.0
    for k, dk in enumerate(psi_delta_derivative_stack(f, psi, K)):
        value = float(dk.values[i])
        if not math.isfinite(value):
            raise StagePropagationError(f"(Delta/psi^Delta)^{k}", f"non-finite derivative at t={t!r}")
        total += binom_neg(alpha, k) * value * _pow(base, alpha + k) / gamma_fn(alpha + k + 1.0)
    return total


def leibniz_product(ts: TimeScale, f: GridFunction, h: GridFunction, psi: PsiFunction, order: Order, a: float, t: float, K: int) -> float:
    """sum_k binom(-alpha, k) f_k(t) I^{alpha+k} h(t)."""
    check_scale(ts, f)
    check_scale(ts, h)
    K = _check_truncation(K)
    alpha = _order_of(order)
    i = f.grid.index_of(t)
    total = 0.0
    for k, dk in enumerate(psi_delta_derivative_stack(f, psi, K)):
        value = float(dk.values[i])
        if not math.isfinite(value):
            raise StagePropagationError(f"(Delta/psi^Delta)^{k}", f"non-finite derivative at t={t!r}")
        if value == 0.0:
            continue
        total += binom_neg(alpha, k) * value * rl_integral_left(ts, h, psi, alpha + k, a, t)
    return total


# ----- Beta function and g-factor -----

def beta_timescale(ts: TimeScale, a: float, b: float, p: float, q: float) -> TaggedValue:
    """
    int_a^b (s - a)^(q-1) (b - s)^(p-1) Delta s.

    Scattered points add their graininess-weighted term; continuous pieces
    use QUADPACK's algebraic-weight rule so endpoint singularities are exact.
    """
    if not a < b:
        raise OrderError(f"Beta on time scales needs a < b, got a={a!r}, b={b!r}")
    ts.locate(a)
    ts.locate(b)
    scope = ts.restrict(a, b)
    total = 0.0

    def scattered_term(s: float) -> float:
        mu = sigma(ts, s) - s
        return _pow(s - a, q - 1.0) * _pow(b - s, p - 1.0) * mu

    for comp in scope.components:
        if isinstance(comp, Point):
            if abs(comp.x - b) <= SNAP_TOLERANCE:
                continue
            if abs(comp.x - a) <= SNAP_TOLERANCE and q < 1:
                return TaggedValue(math.inf, True, f"scattered left endpoint a={a} with q={q} < 1")
            total += scattered_term(comp.x)
            continue
        at_a = abs(comp.lo - a) <= SNAP_TOLERANCE
        at_b = abs(comp.hi - b) <= SNAP_TOLERANCE
        if at_a and q <= 0:
            return TaggedValue(math.inf, True, f"non-integrable singularity at a={a} with q={q} <= 0")
        if at_b and p <= 0:
            return TaggedValue(math.inf, True, f"non-integrable singularity at b={b} with p={p} <= 0")

        def integrand(s, at_a=at_a, at_b=at_b):
            left = 1.0 if at_a else (s - a) ** (q - 1.0)
            right = 1.0 if at_b else (b - s) ** (p - 1.0)
            return left * right

        wvar = (q - 1.0 if at_a else 0.0, p - 1.0 if at_b else 0.0)
        value, _ = integrate.quad(integrand, comp.lo, comp.hi, weight="alg", wvar=wvar, limit=200)
        total += value
        if not at_b:
            total += scattered_term(comp.hi)

    if not math.isfinite(total):
        return TaggedValue(total, True, "non-finite Beta sum")
    return TaggedValue(total)


def beta_inequality_holds(ts: TimeScale, a: float, b: float, p: float, q: float) -> Tuple[bool, float, float]:
    """Check B^T_{a,b}(p, q) >= B(p, q) (b - a)^(p + q - 1)."""
    lhs = beta_timescale(ts, a, b, p, q)
    rhs = beta_classical(p, q) * (b - a) ** (p + q - 1.0)
    return (not lhs.divergent and lhs.value >= rhs * (1.0 - 1e-12)), lhs.value, rhs


def g_factor(ts: TimeScale, p: float, q: float, policy: Optional[GFactorPolicy] = None) -> float:
    """g^T(p, q) = B^T_{0,1}(p, q) / B(p, q), or 1 under the unit-fallback policy."""
    policy = policy if policy is not None else GFactorPolicy()
    if not (ts.contains(0.0) and ts.contains(1.0)):
        raise DomainError("g-factor needs 0 and 1 on the time scale")
    origin = ts.components[ts.locate(0.0)]
    if isinstance(origin, ClosedInterval) and origin.hi >= 1.0 - SNAP_TOLERANCE:
        policy.record_computed()
        return 1.0
    if p <= 0 or q <= 0:
        return policy.record_fallback(f"g^T({p:g}, {q:g}): non-positive Beta argument")
    if not policy.allow_computed:
        return policy.record_fallback(f"g^T({p:g}, {q:g}): computed mode disabled")
    if ts.is_right_scattered(0.0) and q < 1:
        return policy.record_fallback(f"g^T({p:g}, {q:g}): scattered origin with q < 1")
    bt = beta_timescale(ts, 0.0, 1.0, p, q)
    if bt.divergent:
        return policy.record_fallback(f"g^T({p:g}, {q:g}): {bt.reason}")
    policy.record_computed()
    return bt.value / beta_classical(p, q)


def _g_or_unit(ts: TimeScale, p: float, q: float, policy: GFactorPolicy) -> float:
    try:
        return g_factor(ts, p, q, policy)
    except DomainError as exc:
        return policy.record_fallback(f"g^T({p:g}, {q:g}): {exc}")


# ----- reconstruction, integration by parts, conjugation -----

def right_limit_estimate(stage: GridFunction, u: np.ndarray) -> TaggedValue:
    """Estimate F(a+) from the first nodes after a."""
    grid = stage.grid
    if grid.size == 1 or grid.right_scattered[0]:
        return TaggedValue(0.0)
    F = stage.values
    if grid.size < 3 or grid.component_of[2] != grid.component_of[0]:
        estimate = float(F[1])
    else:
        estimate = float(F[1] - (F[2] - F[1]) * (u[1] - u[0]) / (u[2] - u[1]))
    if not math.isfinite(estimate) or abs(estimate) > BOUNDARY_LIMIT:
        return TaggedValue(estimate, True, "boundary term I^{1-gamma} f(a+) is not finite")
    return TaggedValue(estimate)


def reconstruct(ts: TimeScale, f: GridFunction, psi: PsiFunction, p: FracParams, a: float, t: float,
                policy: Optional[GFactorPolicy] = None) -> TaggedValue:
    """
    g(alpha, gamma-alpha) g(gamma-1, 1-gamma) f(t)
      - g(alpha, gamma-alpha) (psi(t) - psi(a))^(gamma-1) / Gamma(gamma) I^{1-gamma} f(a+)
    """
    check_scale(ts, f)
    if p.n != 1:
        raise ParameterError(f"reconstruction is implemented for n = 1, got n={p.n}")
    if t < a:
        raise OrderError(f"reconstruction needs a <= t, got a={a!r} > t={t!r}")
    policy = policy if policy is not None else GFactorPolicy()
    g_rhs = _g_or_unit(ts, p.alpha, p.gamma - p.alpha, policy)
    g_sol = _g_or_unit(ts, p.gamma - 1.0, 1.0 - p.gamma, policy)
    sub = f.subgrid(a, f.grid.t[-1])
    f_t = float(sub.values[sub.grid.index_of(t)])
    if p.gamma >= 1.0:
        boundary = TaggedValue(float(sub.values[0]))
        coefficient = 1.0
    else:
        u = psi.validate(sub.grid)
        boundary = right_limit_estimate(rl_integral_values(sub, psi, 1.0 - p.gamma), u)
        base = float(psi(t)) - float(psi(a))
        coefficient = _pow(base, p.gamma - 1.0) / gamma_fn(p.gamma)
    if boundary.divergent:
        return TaggedValue(math.nan, True, boundary.reason)
    correction = 0.0 if boundary.value == 0.0 else g_rhs * coefficient * boundary.value
    value = g_rhs * g_sol * f_t - correction
    if not math.isfinite(value):
        return TaggedValue(value, True, f"boundary correction is not finite at t={t!r}")
    return TaggedValue(value)


def integration_by_parts_check(ts: TimeScale, phi: GridFunction, vphi: GridFunction, psi: PsiFunction,
                               order: Order, a: float, b: float) -> Tuple[float, float]:
    """Both sides of int (I^alpha_{a+} phi) vphi and int phi psi^Delta I^alpha_{b-}(vphi / psi^Delta)."""
    check_scale(ts, phi)
    check_scale(ts, vphi)
    if not np.array_equal(phi.grid.t, vphi.grid.t):
        raise DomainError("integration by parts needs both functions on the same grid")
    alpha = _order_of(order)
    left_fn = phi.subgrid(a, b)
    right_fn = vphi.subgrid(a, b)
    grid = left_fn.grid
    u = psi.validate(grid)
    weights = delta_measure_weights(grid)
    left_side = rl_integral_values(left_fn, psi, alpha)
    lhs = float(np.dot(weights, left_side.values * right_fn.values))

    slope = psi.delta_values(grid, u)
    zero = np.flatnonzero(slope == 0.0)
    if zero.size:
        raise SingularWeightError(f"psi^Delta vanishes at t={grid.t[zero[0]]!r}")
    ratio = right_fn.with_values(right_fn.values / slope)
    right_side = right_integral_values(ratio, psi, alpha)
    rhs = float(np.dot(weights, left_fn.values * slope * right_side.values))
    return lhs, rhs


def conjugation_oracle(f: Callable[[float], float], psi: PsiFunction, order: Order, a: float, t: float,
                       ts: Optional[TimeScale] = None) -> float:
    """Plain RL integral of f o psi^{-1} on [psi(a), psi(t)], evaluated at psi(t)."""
    if ts is not None and not (len(ts.components) == 1 and isinstance(ts.components[0], ClosedInterval)):
        raise DomainError("conjugation oracle needs a single-interval time scale")
    alpha = _order_of(order)
    if alpha == 0.0:
        return float(f(t))
    ua, ut = float(psi(a)), float(psi(t))
    if ut < ua:
        raise OrderError(f"conjugation needs a <= t, got a={a!r} > t={t!r}")
    if ut == ua:
        return 0.0

    def pulled_back(v: float) -> float:
        return float(f(float(psi.invert(v))))

    value, _ = integrate.quad(pulled_back, ua, ut, weight="alg", wvar=(0.0, alpha - 1.0), limit=200)
    return value / gamma_fn(alpha)


# ----- bounds and limits -----

def boundedness_constant(psi: PsiFunction, order: Order, a: float, b: float) -> float:
    """(psi(b) - psi(a))^alpha / Gamma(alpha + 1)."""
    alpha = _order_of(order)
    return _pow(float(psi(b)) - float(psi(a)), alpha) / gamma_fn(alpha + 1.0)


def hilfer_boundedness_constant(psi: PsiFunction, p: FracParams, a: float, b: float) -> float:
    """
    (psi(b) - psi(a))^(beta(n-alpha)) / Gamma(beta(n-alpha) + 1).

    Bounds sup |D^{alpha,beta} f| by this constant times
    sup |(Delta/psi^Delta)^n I^{n-gamma} f|.
    """
    return boundedness_constant(psi, p.outer_order, a, b)


def vanishing_limit_profile(f: GridFunction, psi: PsiFunction, order: Order, a: float, count: int = 8) -> np.ndarray:
    """|I^alpha f| at the first ``count`` nodes after a."""
    values = rl_integral_values(f, psi, order, a).values
    return np.abs(values[1:count + 1])
