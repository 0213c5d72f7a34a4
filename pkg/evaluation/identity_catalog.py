"""
Identity catalog for the verify command.

Each entry names an identity of the operator family, the relation between its
two sides, the tolerance, the kind of time scale its instances live on and the
verdict the audit is expected to reach. Instances are drawn from a seeded
generator; only coefficients and spacings vary, never the structure, so the
verdict set is the same for every seed.
"""

from typing import Any, Callable, Dict, List

import numpy as np

from core.errors import CatalogError
from core.timescale import ClosedInterval, Point, TimeScale

RELATION_EQUAL = "equal"
RELATION_GREATER_EQUAL = "greater_equal"

VERDICT_HOLDS = "holds"
VERDICT_FAILS = "fails"
VERDICT_DIVERGES = "diverges"


IDENTITY_CATALOG: List[Dict[str, Any]] = [
    {
        "name": "semigroup-real",
        "description": "I^a I^b f = I^(a+b) f on an interval (g = 1)",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-3,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "semigroup-gt-discrete",
        "description": "I^a I^b f = g^T(a, b) I^(a+b) f on a discrete scale",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-9,
        "scale_kind": "discrete",
        "expected_verdict": VERDICT_FAILS,
    },
    {
        "name": "semigroup-inequality-discrete",
        "description": "I^a I^b f >= I^(a+b) f for positive f on a discrete scale",
        "relation": RELATION_GREATER_EQUAL,
        "tolerance": 1e-9,
        "scale_kind": "discrete",
        "expected_verdict": VERDICT_FAILS,
    },
    {
        "name": "hilfer-of-integral-composition",
        "description": "D^(a,b) I^d f = g g I^(2 gamma - a - d) f on an interval",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-3,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_FAILS,
    },
    {
        "name": "hilfer-of-constant-rl",
        "description": "Hilfer derivative (beta = 0) of a constant vanishes",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-3,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_FAILS,
    },
    {
        "name": "hilfer-of-constant-caputo",
        "description": "Hilfer derivative (beta = 1) of a constant vanishes",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-9,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "series-truncation",
        "description": "K = 1 expansion of I^a f is exact for linear f",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-6,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "leibniz-truncation",
        "description": "K = 1 Leibniz expansion of I^a (f h) is exact for linear f",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-4,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "integration-by-parts-discrete",
        "description": "int (I^a phi) vphi = int phi psi^Delta I^a_(b-)(vphi / psi^Delta) on a discrete scale",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-12,
        "scale_kind": "discrete",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "integration-by-parts-real",
        "description": "integration by parts on an interval grid",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-3,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "conjugation",
        "description": "I^a_psi f equals the plain integral of f o psi^-1 evaluated at psi(t)",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-3,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "hilfer-factorization-rl",
        "description": "D^(a,b) f = I^(gamma-a) D_RL^gamma f",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-8,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "hilfer-factorization-caputo",
        "description": "D^(a,b) f = D_C^mu I^(1-gamma) f",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-8,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "left-inverse-real",
        "description": "D^(a,b) I^a f = f on an interval for f(a) = 0",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-3,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "beta-inequality-decreasing",
        "description": "B^T(p, 1) >= B(p, 1) (b - a)^p for p >= 1",
        "relation": RELATION_GREATER_EQUAL,
        "tolerance": 1e-12,
        "scale_kind": "discrete",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "beta-inequality-increasing",
        "description": "B^T(1, q) >= B(1, q) (b - a)^q for q > 1",
        "relation": RELATION_GREATER_EQUAL,
        "tolerance": 1e-9,
        "scale_kind": "discrete",
        "expected_verdict": VERDICT_FAILS,
    },
    {
        "name": "boundedness",
        "description": "sup |I^a f| <= (psi(b) - psi(a))^a / Gamma(a + 1) sup |f|",
        "relation": RELATION_GREATER_EQUAL,
        "tolerance": 1e-12,
        "scale_kind": "mixed",
        "expected_verdict": VERDICT_HOLDS,
    },
    {
        "name": "reconstruction-real",
        "description": "I^a D^(a,b) f = f - (psi - psi(a))^(gamma-1) / Gamma(gamma) I^(1-gamma) f(a+)",
        "relation": RELATION_EQUAL,
        "tolerance": 1e-3,
        "scale_kind": "interval",
        "expected_verdict": VERDICT_HOLDS,
    },
]

CATALOG_BY_NAME: Dict[str, Dict[str, Any]] = {entry["name"]: entry for entry in IDENTITY_CATALOG}


def get_entry(name: str) -> Dict[str, Any]:
    if name not in CATALOG_BY_NAME:
        raise CatalogError(f"unknown identity '{name}'; known: {sorted(CATALOG_BY_NAME)}")
    return CATALOG_BY_NAME[name]


# ----- instance builders -----

def _unit_interval() -> Dict[str, Any]:
    return TimeScale.interval(0.0, 1.0).to_dict()


def _discrete_with_unit(rng: np.random.Generator, count: int) -> Dict[str, Any]:
    """0, 1 and then count - 2 further points at random spacing."""
    gaps = rng.uniform(0.5, 1.5, size=count - 2)
    xs = [0.0, 1.0] + list(1.0 + np.cumsum(gaps))
    return TimeScale.points(xs).to_dict()


def _discrete(rng: np.random.Generator, count: int) -> Dict[str, Any]:
    xs = np.concatenate([[0.0], np.cumsum(rng.uniform(0.3, 1.2, size=count - 1))])
    return TimeScale.points(xs).to_dict()


def _mixed(rng: np.random.Generator) -> Dict[str, Any]:
    lo = rng.uniform(0.4, 0.8)
    hi = lo + rng.uniform(0.5, 1.0)
    comps = [Point(0.0), Point(rng.uniform(0.1, 0.3)), ClosedInterval(lo, hi), Point(hi + rng.uniform(0.2, 0.6))]
    return TimeScale.from_components(comps).to_dict()


def _coefficients(rng: np.random.Generator, degree: int) -> List[float]:
    return [float(c) for c in rng.uniform(-1.0, 1.0, size=degree + 1)]


def _poly(coeffs: List[float]) -> Dict[str, Any]:
    return {"name": "polynomial", "params": {"coefficients": coeffs}}


def _semigroup_real(rng):
    return {"timescale": _unit_interval(), "grid_N": 256, "psi": {"name": "identity"},
            "function": _poly(_coefficients(rng, 3)), "alpha": 0.4, "beta_order": 0.6, "t": 1.0}


def _semigroup_discrete(rng):
    count = 8
    return {"timescale": _discrete_with_unit(rng, count), "grid_N": 1, "psi": {"name": "identity"},
            "function": {"values": [float(v) for v in rng.uniform(0.5, 1.5, size=count)]},
            "alpha": 1.0, "beta_order": 1.0, "t": "last"}


def _integral_composition(rng):
    return {"timescale": _unit_interval(), "grid_N": 256, "psi": {"name": "identity"},
            "function": {"name": "constant", "params": {"value": float(rng.uniform(0.5, 2.0))}},
            "alpha": 0.5, "beta": 0.0, "delta": 0.25, "t": 1.0}


def _constant_rl(rng):
    return {"timescale": _unit_interval(), "grid_N": 128, "psi": {"name": "identity"},
            "function": {"name": "constant", "params": {"value": float(rng.uniform(0.5, 2.0))}},
            "alpha": float(rng.uniform(0.3, 0.8)), "beta": 0.0, "t": 1.0}


def _constant_caputo(rng):
    case = _constant_rl(rng)
    case["beta"] = 1.0
    return case


def _series(rng):
    return {"timescale": _unit_interval(), "grid_N": 128, "psi": {"name": "identity"},
            "function": _poly(_coefficients(rng, 1)), "alpha": float(rng.uniform(0.3, 0.8)), "t": 1.0, "K": 1}


def _leibniz(rng):
    case = _series(rng)
    case["grid_N"] = 256
    case["second"] = _poly(_coefficients(rng, 3))
    return case


def _parts_discrete(rng):
    count = 12
    return {"timescale": _discrete(rng, count), "grid_N": 1,
            "psi": {"name": "affine", "params": {"scale": float(rng.uniform(0.5, 2.0)), "shift": float(rng.uniform(-1, 1))}},
            "function": {"values": [float(v) for v in rng.uniform(-1.0, 1.0, size=count)]},
            "second": {"values": [float(v) for v in rng.uniform(-1.0, 1.0, size=count)]},
            "alpha": float(rng.uniform(0.3, 0.8))}


def _parts_real(rng):
    return {"timescale": _unit_interval(), "grid_N": 512, "psi": {"name": "identity"},
            "function": _poly(_coefficients(rng, 3)), "second": _poly(_coefficients(rng, 3)), "alpha": 0.5}


def _conjugation(rng):
    return {"timescale": _unit_interval(), "grid_N": 256, "psi": {"name": "power", "params": {"exponent": 2.0}},
            "function": _poly(_coefficients(rng, 3)), "alpha": float(rng.uniform(0.3, 0.8)), "t": 1.0}


def _factorization(rng):
    return {"timescale": _unit_interval(), "grid_N": 128, "psi": {"name": "identity"},
            "function": _poly(_coefficients(rng, 3)), "alpha": float(rng.uniform(0.3, 0.8)),
            "beta": float(rng.uniform(0.0, 1.0)), "t": 1.0}


def _left_inverse(rng):
    coeffs = [0.0] + _coefficients(rng, 2)
    return {"timescale": _unit_interval(), "grid_N": 256, "psi": {"name": "identity"},
            "function": _poly(coeffs), "alpha": float(rng.uniform(0.3, 0.8)),
            "beta": float(rng.uniform(0.0, 1.0)), "t": 0.5}


def _beta_decreasing(rng):
    scale = _discrete(rng, 10)
    return {"timescale": scale, "p": float(rng.uniform(1.0, 3.0)), "q": 1.0}


def _beta_increasing(rng):
    scale = _discrete(rng, 10)
    return {"timescale": scale, "p": 1.0, "q": float(rng.uniform(1.5, 3.0))}


def _boundedness(rng):
    return {"timescale": _mixed(rng), "grid_N": 32, "psi": {"name": "identity"},
            "function": {"name": "cosine", "params": {"amplitude": float(rng.uniform(0.5, 2.0)),
                                                      "frequency": float(rng.uniform(1.0, 6.0)),
                                                      "phase": float(rng.uniform(0.0, 3.0))}},
            "alpha": float(rng.uniform(0.2, 0.9))}


def _reconstruction(rng):
    return {"timescale": _unit_interval(), "grid_N": 512, "psi": {"name": "identity"},
            "function": {"name": "psi_power", "params": {"exponent": 1.0, "scale": float(rng.uniform(0.5, 2.0))}},
            "alpha": float(rng.uniform(0.3, 0.8)), "beta": float(rng.uniform(0.0, 1.0)), "t": 0.5}


INSTANCE_BUILDERS: Dict[str, Callable[[np.random.Generator], Dict[str, Any]]] = {
    "semigroup-real": _semigroup_real,
    "semigroup-gt-discrete": _semigroup_discrete,
    "semigroup-inequality-discrete": _semigroup_discrete,
    "hilfer-of-integral-composition": _integral_composition,
    "hilfer-of-constant-rl": _constant_rl,
    "hilfer-of-constant-caputo": _constant_caputo,
    "series-truncation": _series,
    "leibniz-truncation": _leibniz,
    "integration-by-parts-discrete": _parts_discrete,
    "integration-by-parts-real": _parts_real,
    "conjugation": _conjugation,
    "hilfer-factorization-rl": _factorization,
    "hilfer-factorization-caputo": _factorization,
    "left-inverse-real": _left_inverse,
    "beta-inequality-decreasing": _beta_decreasing,
    "beta-inequality-increasing": _beta_increasing,
    "boundedness": _boundedness,
    "reconstruction-real": _reconstruction,
}


def build_instance(name: str, seed: int) -> Dict[str, Any]:
    """Deterministic instance for one identity; each identity gets its own stream."""
    get_entry(name)
    index = [entry["name"] for entry in IDENTITY_CATALOG].index(name)
    rng = np.random.default_rng([int(seed), index])
    return INSTANCE_BUILDERS[name](rng)
