# evaluation/identity_auditor.py
"""
IdentityAuditor for the operator family.

Evaluates both sides of every catalog identity on a seeded instance, turns the
comparison into a verdict (holds, fails, diverges) and checks it against the
expected verdict. Catalog cases are fanned out to a thread pool; results keep
catalog order so reports are deterministic.
"""

import asyncio
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Tuple

from core.delta_calculus import GridFunction, PsiFunction, weighted_norm
from core.errors import EvaluationError, StagePropagationError
from core.frac_operators import (
    FracParams,
    GFactorPolicy,
    beta_inequality_holds,
    boundedness_constant,
    conjugation_oracle,
    g_factor,
    hilfer_derivative,
    hilfer_values,
    hilfer_via_caputo,
    hilfer_via_rl,
    integration_by_parts_check,
    leibniz_product,
    reconstruct,
    rl_integral_left,
    rl_integral_values,
    series_expansion,
)
from core.logging_system import StructuredLogger
from core.named_forms import make_function, make_psi
from core.timescale import Grid, TimeScale, build_grid
from evaluation.identity_catalog import (
    IDENTITY_CATALOG,
    RELATION_EQUAL,
    VERDICT_DIVERGES,
    VERDICT_FAILS,
    VERDICT_HOLDS,
    build_instance,
    get_entry,
)
from evaluation.reference_oracles import brute_composition

logger = StructuredLogger("identity_auditor")

Sides = Tuple[float, float, List[str]]


# ----- instance decoding -----

class _Setting:
    def __init__(self, instance: Dict[str, Any]):
        self.instance = instance
        self.ts = TimeScale.from_dict(instance["timescale"])
        self.grid: Grid = build_grid(self.ts, instance.get("grid_N", 1))
        spec = instance.get("psi", {"name": "identity"})
        self.psi: PsiFunction = make_psi(spec["name"], spec.get("params"))
        self.policy = GFactorPolicy()

    def function(self, key: str = "function") -> GridFunction:
        spec = self.instance[key]
        if "values" in spec:
            return GridFunction(self.grid, spec["values"])
        return GridFunction.sample(self.grid, make_function(spec["name"], spec.get("params"), self.psi))

    def callable(self, key: str = "function") -> Callable:
        spec = self.instance[key]
        return make_function(spec["name"], spec.get("params"), self.psi)

    @property
    def t(self) -> float:
        value = self.instance.get("t", "last")
        return float(self.grid.t[-1]) if value == "last" else float(value)

    @property
    def a(self) -> float:
        return float(self.grid.t[0])

    @property
    def params(self) -> FracParams:
        return FracParams(self.instance["alpha"], self.instance.get("beta", 0.0))

    def flags(self) -> List[str]:
        return ["g-unit-fallback"] if self.policy.warning_log else []


# ----- evaluators -----

def _semigroup_real(s: _Setting) -> Sides:
    f = s.function()
    alpha, beta = s.instance["alpha"], s.instance["beta_order"]
    inner = rl_integral_values(f, s.psi, beta)
    lhs = rl_integral_values(inner, s.psi, alpha).value_at_node(s.t)
    rhs = rl_integral_left(s.ts, f, s.psi, alpha + beta, s.a, s.t)
    return lhs, rhs, []


def _semigroup_gt(s: _Setting) -> Sides:
    f = s.function()
    alpha, beta = s.instance["alpha"], s.instance["beta_order"]
    lhs = brute_composition(s.ts, f, s.psi, s.a, s.t, alpha, beta)
    g = g_factor(s.ts, alpha, beta, s.policy)
    rhs = g * rl_integral_left(s.ts, f, s.psi, alpha + beta, s.a, s.t)
    return lhs, rhs, s.flags()


def _semigroup_inequality(s: _Setting) -> Sides:
    f = s.function()
    alpha, beta = s.instance["alpha"], s.instance["beta_order"]
    lhs = brute_composition(s.ts, f, s.psi, s.a, s.t, alpha, beta)
    rhs = rl_integral_left(s.ts, f, s.psi, alpha + beta, s.a, s.t)
    return lhs, rhs, []


def _integral_composition(s: _Setting) -> Sides:
    f = s.function()
    p, delta = s.params, s.instance["delta"]
    lhs = hilfer_values(rl_integral_values(f, s.psi, delta), s.psi, p).value_at_node(s.t)
    factor = g_factor(s.ts, 1.0 - p.alpha, delta, s.policy) * g_factor(s.ts, p.gamma - p.alpha, p.gamma - delta, s.policy)
    rhs = factor * rl_integral_left(s.ts, f, s.psi, 2.0 * p.gamma - p.alpha - delta, s.a, s.t)
    return lhs, rhs, s.flags()


def _hilfer_of_constant(s: _Setting) -> Sides:
    return hilfer_derivative(s.ts, s.function(), s.psi, s.params, s.a, s.t), 0.0, []


def _series(s: _Setting) -> Sides:
    f = s.function()
    alpha = s.instance["alpha"]
    lhs = series_expansion(s.ts, f, s.psi, alpha, s.a, s.t, s.instance["K"])
    rhs = rl_integral_left(s.ts, f, s.psi, alpha, s.a, s.t)
    return lhs, rhs, []


def _leibniz(s: _Setting) -> Sides:
    f, h = s.function(), s.function("second")
    alpha = s.instance["alpha"]
    lhs = rl_integral_left(s.ts, f * h, s.psi, alpha, s.a, s.t)
    rhs = leibniz_product(s.ts, f, h, s.psi, alpha, s.a, s.t, s.instance["K"])
    return lhs, rhs, []


def _parts(s: _Setting) -> Sides:
    lhs, rhs = integration_by_parts_check(
        s.ts, s.function(), s.function("second"), s.psi, s.instance["alpha"], s.a, float(s.grid.t[-1])
    )
    return lhs, rhs, ["right-integral-excludes-t"]


def _conjugation(s: _Setting) -> Sides:
    alpha = s.instance["alpha"]
    lhs = rl_integral_left(s.ts, s.function(), s.psi, alpha, s.a, s.t)
    rhs = conjugation_oracle(s.callable(), s.psi, alpha, s.a, s.t, s.ts)
    return lhs, rhs, []


def _factorization_rl(s: _Setting) -> Sides:
    f, p = s.function(), s.params
    return hilfer_values(f, s.psi, p).value_at_node(s.t), hilfer_via_rl(f, s.psi, p).value_at_node(s.t), []


def _factorization_caputo(s: _Setting) -> Sides:
    f, p = s.function(), s.params
    return hilfer_values(f, s.psi, p).value_at_node(s.t), hilfer_via_caputo(f, s.psi, p).value_at_node(s.t), []


def _left_inverse(s: _Setting) -> Sides:
    f, p = s.function(), s.params
    lhs = hilfer_values(rl_integral_values(f, s.psi, p.alpha), s.psi, p).value_at_node(s.t)
    rhs = g_factor(s.ts, p.gamma - p.n, p.n - p.gamma, s.policy) * f.value_at_node(s.t)
    return lhs, rhs, s.flags()


def _beta_inequality(s: _Setting) -> Sides:
    _, lhs, rhs = beta_inequality_holds(s.ts, s.ts.min, s.ts.max, s.instance["p"], s.instance["q"])
    return lhs, rhs, []


def _boundedness(s: _Setting) -> Sides:
    f = s.function()
    alpha = s.instance["alpha"]
    image = rl_integral_values(f, s.psi, alpha)
    bound = boundedness_constant(s.psi, alpha, s.a, float(s.grid.t[-1])) * weighted_norm(f, s.psi, 1.0, s.a)
    return bound, weighted_norm(image, s.psi, 1.0, s.a), []


def _reconstruction(s: _Setting) -> Sides:
    f, p = s.function(), s.params
    lhs = rl_integral_values(hilfer_values(f, s.psi, p), s.psi, p.alpha).value_at_node(s.t)
    tagged = reconstruct(s.ts, f, s.psi, p, s.a, s.t, s.policy)
    flags = s.flags() + (["divergent-boundary-term"] if tagged.divergent else [])
    return lhs, tagged.value, flags


EVALUATORS: Dict[str, Callable[[_Setting], Sides]] = {
    "semigroup-real": _semigroup_real,
    "semigroup-gt-discrete": _semigroup_gt,
    "semigroup-inequality-discrete": _semigroup_inequality,
    "hilfer-of-integral-composition": _integral_composition,
    "hilfer-of-constant-rl": _hilfer_of_constant,
    "hilfer-of-constant-caputo": _hilfer_of_constant,
    "series-truncation": _series,
    "leibniz-truncation": _leibniz,
    "integration-by-parts-discrete": _parts,
    "integration-by-parts-real": _parts,
    "conjugation": _conjugation,
    "hilfer-factorization-rl": _factorization_rl,
    "hilfer-factorization-caputo": _factorization_caputo,
    "left-inverse-real": _left_inverse,
    "beta-inequality-decreasing": _beta_inequality,
    "beta-inequality-increasing": _beta_inequality,
    "boundedness": _boundedness,
    "reconstruction-real": _reconstruction,
}


def judge(relation: str, lhs: float, rhs: float, tolerance: float) -> str:
    """Verdict with a tolerance relative to max(1, |lhs|, |rhs|)."""
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return VERDICT_DIVERGES
    scale = max(1.0, abs(lhs), abs(rhs))
    if relation == RELATION_EQUAL:
        return VERDICT_HOLDS if abs(lhs - rhs) <= tolerance * scale else VERDICT_FAILS
    return VERDICT_HOLDS if lhs >= rhs - tolerance * scale else VERDICT_FAILS


def audit_identity(name: str, instance: Dict[str, Any]) -> Dict[str, Any]:
    """Evaluate one identity on one instance and return its verdict record."""
    entry = get_entry(name)
    reason = ""
    try:
        lhs, rhs, flags = EVALUATORS[name](_Setting(instance))
    except (StagePropagationError, EvaluationError) as exc:
        lhs, rhs, flags, reason = math.nan, math.nan, [], str(exc)
    lhs, rhs = float(lhs), float(rhs)
    verdict = judge(entry["relation"], lhs, rhs, entry["tolerance"])
    abs_diff = abs(lhs - rhs)
    record = {
        "identity": name,
        "instance": instance,
        "relation": entry["relation"],
        "tolerance": entry["tolerance"],
        "lhs": lhs,
        "rhs": rhs,
        "abs_diff": abs_diff,
        "rel_diff": abs_diff / max(abs(lhs), abs(rhs)) if max(abs(lhs), abs(rhs)) > 0 else 0.0,
        "convention_flags": flags,
        "verdict": verdict,
        "expected_verdict": entry["expected_verdict"],
        "matches_expected": verdict == entry["expected_verdict"],
    }
    if reason:
        record["reason"] = reason
    return record


class IdentityAuditor:
    """
    Run the identity catalog.

    - Builds one seeded instance per identity
    - Evaluates cases concurrently in a thread pool
    - Summarizes verdicts and mismatches against the expected verdict set
    """

    def __init__(self, workers: int = 4):
        self.workers = max(1, int(workers))
        self.results: List[Dict[str, Any]] = []

    async def run(self, seed: int = 0, names: Optional[List[str]] = None) -> List[Dict[str, Any]]:
        names = names or [entry["name"] for entry in IDENTITY_CATALOG]
        for name in names:
            get_entry(name)
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            tasks = [
                loop.run_in_executor(pool, audit_identity, name, build_instance(name, seed))
                for name in names
            ]
            self.results = list(await asyncio.gather(*tasks))
        for record in self.results:
            if not record["matches_expected"]:
                logger.warning("identity verdict differs from expected", identity=record["identity"],
                               verdict=record["verdict"], expected=record["expected_verdict"])
        return self.results

    @property
    def mismatches(self) -> int:
        return sum(1 for record in self.results if not record["matches_expected"])

    def summary_table(self) -> str:
        header = f"{'identity':<34} {'verdict':<9} {'expected':<9} {'abs_diff':>12}"
        lines = [header, "-" * len(header)]
        for record in self.results:
            mark = "" if record["matches_expected"] else "  <-- mismatch"
            lines.append(
                f"{record['identity']:<34} {record['verdict']:<9} {record['expected_verdict']:<9} "
                f"{record['abs_diff']:>12.3e}{mark}"
            )
        lines.append("-" * len(header))
        lines.append(f"{len(self.results)} identities, {self.mismatches} mismatches")
        return "\n".join(lines) + "\n"

