"""
tests/test_named_forms.py
=========================
Unit tests for the named psi, function and right-hand-side forms.
"""

import numpy as np
import pytest

from core.errors import DomainError, InputError, ParameterError
from core.named_forms import FUNCTION_FORMS, PSI_FORMS, RHS_FORMS, make_function, make_psi, make_rhs, parse_psi_flag
from core.timescale import TimeScale, build_grid


class TestPsiForms:
    """Tests for weight function builders."""

    @pytest.mark.parametrize("name", sorted(PSI_FORMS))
    def test_defaults_are_increasing_on_unit_interval(self, name):
        psi = make_psi(name)
        grid = build_grid(TimeScale.interval(0.0, 1.0), 16)
        u = psi.validate(grid)
        assert np.all(np.diff(u) > 0)

    def test_affine(self):
        psi = make_psi("affine", {"scale": 2.0, "shift": 1.0})
        assert float(psi(1.0)) == 3.0
        assert float(psi.prime(0.3)) == 2.0
        assert float(psi.invert(3.0)) == pytest.approx(1.0)

    def test_power_derivative(self):
        psi = make_psi("power", {"exponent": 3})
        assert float(psi.prime(2.0)) == pytest.approx(12.0)

    def test_exponential_default_starts_at_zero(self):
        assert float(make_psi("exponential")(0.0)) == pytest.approx(0.0)

    def test_unknown_name(self):
        with pytest.raises(InputError):
            make_psi("spline")

    def test_unknown_parameter(self):
        with pytest.raises(InputError):
            make_psi("power", {"degree": 2})

    def test_non_positive_parameter(self):
        with pytest.raises(ParameterError):
            make_psi("affine", {"scale": 0.0})

    def test_power_undefined_below_zero(self):
        grid = build_grid(TimeScale.interval(-1.0, 1.0), 4)
        with pytest.raises(DomainError):
            make_psi("power").validate(grid)


class TestFunctionForms:
    """Tests for sampled function builders."""

    def test_polynomial_lowest_first(self):
        f = make_function("polynomial", {"coefficients": [1.0, 0.0, 2.0]})
        assert float(f(np.array(2.0))) == 9.0

    def test_psi_power_uses_psi(self):
        f = make_function("psi_power", {"exponent": 2.0}, make_psi("power", {"exponent": 2}))
        assert float(f(np.array(2.0))) == pytest.approx(16.0)

    def test_psi_power_vanishes_before_origin(self):
        f = make_function("psi_power", {"exponent": 1.0, "origin": 0.5})
        assert f(np.array([0.0, 1.0])).tolist() == [0.0, 0.5]

    def test_constant(self):
        f = make_function("constant", {"value": 3.0})
        assert f(np.zeros(4)).tolist() == [3.0] * 4

    def test_empty_polynomial(self):
        with pytest.raises(ParameterError):
            make_function("polynomial", {"coefficients": []})

    def test_catalog_names(self):
        assert set(FUNCTION_FORMS) == {"constant", "polynomial", "psi_power", "cosine", "exponential"}


class TestRhsForms:
    """Tests for right-hand sides and their declared constants."""

    def test_constant_bounds(self):
        rhs = make_rhs("constant", {"value": -2.0})
        assert rhs.lipschitz == 0.0
        assert rhs.bound == 2.0
        assert rhs(np.zeros(3), np.ones(3)).tolist() == [-2.0] * 3

    def test_linear_lipschitz(self):
        rhs = make_rhs("linear", {"a": -3.0, "c": 1.0})
        assert rhs.lipschitz == 3.0
        assert rhs.bound is None

    def test_scaled_cosine(self):
        rhs = make_rhs("scaled-cosine")
        assert rhs.lipschitz == 0.5
        assert rhs.bound == 0.5
        assert float(rhs(np.array(0.0), np.array(0.0))) == pytest.approx(0.5)

    def test_logistic_has_no_global_constants(self):
        rhs = make_rhs("logistic", {"rate": 2.0, "capacity": 4.0})
        assert rhs.lipschitz is None and rhs.bound is None
        assert float(rhs(np.array(0.0), np.array(2.0))) == pytest.approx(2.0)

    def test_catalog_names(self):
        assert set(RHS_FORMS) == {"constant", "linear", "scaled-cosine", "logistic"}


class TestPsiFlag:
    """Tests for the --psi flag syntax."""

    def test_name_only(self):
        assert parse_psi_flag("identity") == ("identity", {})

    def test_with_parameters(self):
        assert parse_psi_flag("power:exponent=3") == ("power", {"exponent": 3.0})

    def test_multiple_parameters(self):
        name, params = parse_psi_flag("affine:scale=2, shift=-1")
        assert name == "affine"
        assert params == {"scale": 2.0, "shift": -1.0}

    def test_malformed_item(self):
        with pytest.raises(InputError):
            parse_psi_flag("power:exponent")

    def test_non_numeric(self):
        with pytest.raises(InputError):
            parse_psi_flag("power:exponent=two")

    def test_unknown_name(self):
        with pytest.raises(InputError):
            parse_psi_flag("cubic:exponent=3")
