# core/named_forms.py
"""
Named forms for weight functions, sampled functions and IVP right-hand sides.

Input documents and the --psi flag refer to these by name plus keyword
parameters, e.g. ``{"name": "power", "params": {"exponent": 2}}`` or
``power:exponent=2``. Every builder checks its parameters and returns plain
numpy callables.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from core.delta_calculus import PsiFunction, identity_psi
from core.errors import InputError, ParameterError

RhsFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class NamedForm:
    name: str
    defaults: Dict[str, Any]
    builder: Callable[..., Any]
    description: str = ""

    def build(self, params: Optional[Dict[str, Any]] = None, **extra):
        params = dict(params or {})
        unknown = sorted(set(params) - set(self.defaults))
        if unknown:
            raise InputError(f"form '{self.name}' does not accept parameter(s) {unknown}; allowed: {sorted(self.defaults)}")
        merged = {**self.defaults, **params}
        return self.builder(**merged, **extra)


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ParameterError(f"{name} must be positive, got {value}")
    return value


# ----- psi forms -----

def _affine(scale: float, shift: float) -> PsiFunction:
    scale = _positive("affine scale", scale)
    shift = float(shift)
    return PsiFunction(
        lambda t: scale * t + shift,
        lambda t: np.full_like(t, scale),
        f"affine(scale={scale:g}, shift={shift:g})",
        lambda u: (u - shift) / scale,
    )


def _power(exponent: float) -> PsiFunction:
    p = _positive("power exponent", exponent)

    def func(t):
        with np.errstate(invalid="ignore"):
            return np.where(t >= 0, np.power(np.abs(t), p), np.nan)

    def derivative(t):
        with np.errstate(divide="ignore", invalid="ignore"):
            return p * np.power(t, p - 1.0)

    return PsiFunction(func, derivative, f"power(exponent={p:g})", lambda u: np.power(u, 1.0 / p))


def _exponential(rate: float, shift: float, offset: float) -> PsiFunction:
    rate = _positive("exponential rate", rate)
    shift, offset = float(shift), float(offset)
    return PsiFunction(
        lambda t: np.exp(rate * t + shift) + offset,
        lambda t: rate * np.exp(rate * t + shift),
        f"exponential(rate={rate:g}, shift={shift:g}, offset={offset:g})",
        lambda u: (np.log(u - offset) - shift) / rate,
    )


def _logarithm(shift: float) -> PsiFunction:
    shift = float(shift)

    def func(t):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(t + shift > 0, np.log(np.abs(t + shift)), np.nan)

    return PsiFunction(func, lambda t: 1.0 / (t + shift), f"logarithm(shift={shift:g})", lambda u: np.exp(u) - shift)


PSI_FORMS: Dict[str, NamedForm] = {
    "identity": NamedForm("identity", {}, identity_psi, "psi(t) = t"),
    "affine": NamedForm("affine", {"scale": 1.0, "shift": 0.0}, _affine, "psi(t) = scale * t + shift"),
    "power": NamedForm("power", {"exponent": 2.0}, _power, "psi(t) = t^exponent on t >= 0"),
    "exponential": NamedForm(
        "exponential", {"rate": 1.0, "shift": 0.0, "offset": -1.0}, _exponential,
        "psi(t) = exp(rate * t + shift) + offset",
    ),
    "logarithm": NamedForm("logarithm", {"shift": 1.0}, _logarithm, "psi(t) = log(t + shift)"),
}


# ----- function forms -----

def _constant_fn(value: float, psi: PsiFunction):
    value = float(value)
    return lambda t: np.full_like(np.asarray(t, dtype=float), value)


def _polynomial_fn(coefficients, psi: PsiFunction):
    coeffs = np.asarray(coefficients, dtype=float)
    if coeffs.ndim != 1 or coeffs.size == 0:
        raise ParameterError("polynomial needs a nonempty coefficient list (lowest degree first)")
    return lambda t: np.polynomial.polynomial.polyval(np.asarray(t, dtype=float), coeffs)


def _psi_power_fn(exponent: float, origin: float, scale: float, psi: PsiFunction):
    exponent, scale = float(exponent), float(scale)
    base_at = float(psi(float(origin)))

    def func(t):
        base = psi(np.asarray(t, dtype=float)) - base_at
        with np.errstate(divide="ignore", invalid="ignore"):
            return scale * np.power(np.maximum(base, 0.0), exponent)

    return func


def _cosine_fn(amplitude: float, frequency: float, phase: float, psi: PsiFunction):
    amplitude, frequency, phase = float(amplitude), float(frequency), float(phase)
    return lambda t: amplitude * np.cos(frequency * np.asarray(t, dtype=float) + phase)


def _exponential_fn(amplitude: float, rate: float, psi: PsiFunction):
    amplitude, rate = float(amplitude), float(rate)
    return lambda t: amplitude * np.exp(rate * np.asarray(t, dtype=float))


FUNCTION_FORMS: Dict[str, NamedForm] = {
    "constant": NamedForm("constant", {"value": 1.0}, _constant_fn, "f(t) = value"),
    "polynomial": NamedForm("polynomial", {"coefficients": [0.0, 1.0]}, _polynomial_fn,
                            "f(t) = sum_k c_k t^k"),
    "psi_power": NamedForm("psi_power", {"exponent": 1.0, "origin": 0.0, "scale": 1.0}, _psi_power_fn,
                           "f(t) = scale * (psi(t) - psi(origin))^exponent"),
    "cosine": NamedForm("cosine", {"amplitude": 1.0, "frequency": 1.0, "phase": 0.0}, _cosine_fn,
                        "f(t) = amplitude * cos(frequency * t + phase)"),
    "exponential": NamedForm("exponential", {"amplitude": 1.0, "rate": 1.0}, _exponential_fn,
                             "f(t) = amplitude * exp(rate * t)"),
}


# ----- right-hand sides -----

@dataclass(frozen=True)
class RhsForm:
    """Right-hand side f(t, y) with the Lipschitz and sup bounds it is known to satisfy."""
    func: RhsFn
    label: str
    lipschitz: Optional[float] = None
    bound: Optional[float] = None

    def __call__(self, t, y):
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(np.asarray(self.func(t, np.asarray(y, dtype=float)), dtype=float), t.shape)


def _constant_rhs(value: float) -> RhsForm:
    value = float(value)
    return RhsForm(lambda t, y: np.full_like(t, value), f"constant({value:g})", 0.0, abs(value))


def _linear_rhs(a: float, b: float, c: float) -> RhsForm:
    """f(t, y) = a * y + b * t + c."""
    a, b, c = float(a), float(b), float(c)
    return RhsForm(lambda t, y: a * y + b * t + c, f"linear(a={a:g}, b={b:g}, c={c:g})", abs(a))


def _scaled_cosine_rhs(scale: float, shift: float) -> RhsForm:
    scale, shift = float(scale), float(shift)
    return RhsForm(lambda t, y: scale * np.cos(y + shift), f"scaled-cosine(scale={scale:g}, shift={shift:g})",
                   abs(scale), abs(scale))


def _logistic_rhs(rate: float, capacity: float) -> RhsForm:
    rate = float(rate)
    capacity = _positive("logistic capacity", capacity)
    return RhsForm(lambda t, y: rate * y * (1.0 - y / capacity), f"logistic(rate={rate:g}, capacity={capacity:g})")


RHS_FORMS: Dict[str, NamedForm] = {
    "constant": NamedForm("constant", {"value": 1.0}, _constant_rhs, "f(t, y) = value"),
    "linear": NamedForm("linear", {"a": 0.0, "b": 0.0, "c": 0.0}, _linear_rhs, "f(t, y) = a*y + b*t + c"),
    "scaled-cosine": NamedForm("scaled-cosine", {"scale": 0.5, "shift": 0.0}, _scaled_cosine_rhs,
                               "f(t, y) = scale * cos(y + shift)"),
    "logistic": NamedForm("logistic", {"rate": 1.0, "capacity": 1.0}, _logistic_rhs,
                          "f(t, y) = rate * y * (1 - y / capacity)"),
}


def _lookup(table: Dict[str, NamedForm], kind: str, name: str) -> NamedForm:
    if name not in table:
        raise InputError(f"unknown {kind} form '{name}'; known: {sorted(table)}")
    return table[name]


def make_psi(name: str, params: Optional[Dict[str, Any]] = None) -> PsiFunction:
    return _lookup(PSI_FORMS, "psi", name).build(params)


def make_function(name: str, params: Optional[Dict[str, Any]] = None,
                  psi: Optional[PsiFunction] = None) -> Callable[[np.ndarray], np.ndarray]:
    return _lookup(FUNCTION_FORMS, "function", name).build(params, psi=psi or identity_psi())


def make_rhs(name: str, params: Optional[Dict[str, Any]] = None) -> RhsForm:
    return _lookup(RHS_FORMS, "rhs", name).build(params)


def parse_psi_flag(text: str) -> Tuple[str, Dict[str, float]]:
    """Parse ``name`` or ``name:key=value,key=value``."""
    name, _, rest = text.strip().partition(":")
    params: Dict[str, float] = {}
    for item in filter(None, (piece.strip() for piece in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--psi parameter '{item}' must look like key=value")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise InputError(f"--psi parameter '{key.strip()}' must be numeric, got '{value}'") from None
    _lookup(PSI_FORMS, "psi", name)
    return name, params
