"""
tests/test_reference_oracles.py
===============================
The grid operators must agree with the brute-force sums on purely discrete
time scales, for arbitrary spacings, weights and orders.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.delta_calculus import GridFunction, delta_integral, identity_psi
from core.errors import DomainError, OrderError
from core.frac_operators import gamma_fn, rl_integral_left, rl_integral_values
from core.named_forms import make_psi
from core.timescale import TimeScale, build_grid
from evaluation.reference_oracles import brute_composition, brute_delta_integral, brute_frac_integral

gaps = st.lists(st.floats(min_value=0.1, max_value=2.0), min_size=2, max_size=63)
orders = st.floats(min_value=0.1, max_value=2.5)
scales = st.floats(min_value=0.5, max_value=2.0)


def discrete_scale(spacings):
    return TimeScale.points(np.concatenate([[0.0], np.cumsum(spacings)]))


class TestDeltaIntegralOracle:
    """Delta integral against the plain graininess-weighted sum."""

    @given(gaps)
    @settings(max_examples=200, deadline=None)
    def test_matches_grid_quadrature(self, spacings):
        ts = discrete_scale(spacings)
        f = GridFunction.sample(build_grid(ts, 1), np.cos)
        expected = brute_delta_integral(ts, f, ts.min, ts.max)
        assert delta_integral(ts, f, ts.min, ts.max) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_integers(self):
        ts = TimeScale.integers(0, 5)
        assert brute_delta_integral(ts, lambda s: 1.0, 0.0, 5.0) == 5.0

    def test_rejects_intervals(self):
        with pytest.raises(DomainError):
            brute_delta_integral(TimeScale.interval(0.0, 1.0), lambda s: 1.0, 0.0, 1.0)

    def test_order_of_bounds(self):
        with pytest.raises(OrderError):
            brute_delta_integral(TimeScale.integers(0, 5), lambda s: 1.0, 3.0, 1.0)


class TestFractionalIntegralOracle:
    """Left fractional integral against the explicit kernel sum."""

    @given(gaps, orders, scales)
    @settings(max_examples=200, deadline=None)
    def test_matches_kernel_quadrature(self, spacings, alpha, scale):
        ts = discrete_scale(spacings)
        psi = make_psi("affine", {"scale": scale, "shift": 0.3})
        f = GridFunction.sample(build_grid(ts, 1), lambda t: 1.0 + np.sin(t))
        expected = brute_frac_integral(ts, f, psi, alpha, ts.min, ts.max)
        actual = rl_integral_left(ts, f, psi, alpha, ts.min, ts.max)
        assert actual == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_integers_constant(self):
        ts = TimeScale.integers(0, 4)
        value = brute_frac_integral(ts, lambda s: 1.0, identity_psi(), 0.5, 0.0, 2.0)
        assert value == pytest.approx((1.0 + 2.0 ** -0.5) / gamma_fn(0.5))

    def test_order_one_is_delta_integral(self):
        ts = TimeScale.integers(0, 6)
        f = lambda s: s ** 2
        assert brute_frac_integral(ts, f, identity_psi(), 1.0, 0.0, 6.0) == pytest.approx(
            brute_delta_integral(ts, f, 0.0, 6.0)
        )


class TestCompositionOracle:
    """Nested integrals against the explicit double sum."""

    @given(gaps, orders, orders)
    @settings(max_examples=200, deadline=None)
    def test_matches_nested_grid_integrals(self, spacings, alpha, beta_ord):
        ts = discrete_scale(spacings)
        psi = identity_psi()
        f = GridFunction.sample(build_grid(ts, 1), lambda t: 2.0 + np.cos(t))
        nested = rl_integral_values(rl_integral_values(f, psi, beta_ord), psi, alpha)
        expected = brute_composition(ts, f, psi, ts.min, ts.max, alpha, beta_ord)
        assert nested.values[-1] == pytest.approx(expected, rel=1e-12, abs=1e-12)
