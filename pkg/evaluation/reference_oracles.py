# evaluation/reference_oracles.py
"""
Brute-force reference sums on purely discrete time scales.

Independent of the operator code paths: plain loops over the scale's points,
compensated summation (math.fsum) and Gamma from frac_operators. Used by the
tests and by the identity auditor.
"""

import math
from typing import Any, Callable, List

from core.errors import DomainError, OrderError, ParameterError
from core.frac_operators import gamma_fn
from core.timescale import Point, TimeScale, sigma

Sampled = Any  # callable t -> value, or a GridFunction


def _points(ts: TimeScale) -> List[float]:
    if not ts.is_discrete:
        raise DomainError("reference oracles only handle purely discrete time scales")
    return [c.x for c in ts.components if isinstance(c, Point)]


def _sampler(f) -> Callable[[float], float]:
    if hasattr(f, "value_at_node"):
        return f.value_at_node
    return lambda s: float(f(s))


def _psi(psi, x: float) -> float:
    return float(psi(x))


def brute_delta_integral(ts: TimeScale, f: Sampled, a: float, b: float) -> float:
    """sum over s in [a, b) of f(s) (sigma(s) - s)."""
    points = _points(ts)
    if a > b:
        raise OrderError(f"delta integral needs a <= b, got a={a!r} > b={b!r}")
    fs = _sampler(f)
    return math.fsum(fs(s) * (sigma(ts, s) - s) for s in points if a <= s < b)


def brute_frac_integral(ts: TimeScale, f: Sampled, psi, order: float, a: float, t: float) -> float:
    """(1/Gamma(alpha)) sum over s in [a, t) of (psi(sigma(s)) - psi(s)) (psi(t) - psi(s))^(alpha-1) f(s)."""
    points = _points(ts)
    if order <= 0:
        raise ParameterError(f"order must be positive, got {order}")
    if a > t:
        raise OrderError(f"fractional integral needs a <= t, got a={a!r} > t={t!r}")
    fs = _sampler(f)
    psi_t = _psi(psi, t)
    terms = []
    for s in points:
        if not a <= s < t:
            continue
        psi_s = _psi(psi, s)
        terms.append((_psi(psi, sigma(ts, s)) - psi_s) * (psi_t - psi_s) ** (order - 1.0) * fs(s))
    return math.fsum(terms) / gamma_fn(order)


def brute_composition(ts: TimeScale, f: Sampled, psi, a: float, t: float, alpha: float, beta_ord: float) -> float:
    """I^alpha (I^beta f)(t) as an explicit double sum."""
    points = _points(ts)
    inner = {s: brute_frac_integral(ts, f, psi, beta_ord, a, s) for s in points if a <= s < t}
    return brute_frac_integral(ts, lambda s: inner[s], psi, alpha, a, t)
