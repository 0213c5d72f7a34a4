"""
tests/test_timescale.py
=======================
Unit tests for time scales, jump operators and grids.

Test Coverage:
- Construction and validation of components
- sigma, rho, graininess and the kappa restriction
- Grid construction, node lookup and restriction
- JSON documents
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import DomainError, InputError, OrderError, ParameterError, ResolutionError
from core.timescale import (
    NODE_ISOLATED,
    NODE_PANEL,
    ClosedInterval,
    Point,
    TimeScale,
    build_grid,
    graininess,
    kappa_restrict,
    load_timescale_json,
    rho,
    save_timescale_json,
    sigma,
)


@pytest.fixture
def mixed():
    """{0} u [1, 2]"""
    return TimeScale.from_components([Point(0.0), ClosedInterval(1.0, 2.0)])


class TestConstruction:
    """Tests for building time scales."""

    def test_interval_requires_lo_below_hi(self):
        with pytest.raises(DomainError):
            ClosedInterval(1.0, 1.0)

    def test_non_finite_point_rejected(self):
        with pytest.raises(DomainError):
            Point(float("inf"))

    def test_overlapping_components_rejected(self):
        with pytest.raises(DomainError):
            TimeScale.from_components([ClosedInterval(0.0, 1.0), ClosedInterval(0.5, 2.0)])

    def test_touching_components_rejected(self):
        with pytest.raises(DomainError):
            TimeScale.from_components([ClosedInterval(0.0, 1.0), Point(1.0)])

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            TimeScale(())

    def test_components_sorted(self):
        ts = TimeScale.from_components([ClosedInterval(1.0, 2.0), Point(0.0)])
        assert isinstance(ts.components[0], Point)
        assert ts.min == 0.0 and ts.max == 2.0

    def test_integers(self):
        ts = TimeScale.integers(0, 4)
        assert ts.is_discrete
        assert [c.x for c in ts.components] == [0.0, 1.0, 2.0, 3.0, 4.0]

    def test_integers_order(self):
        with pytest.raises(OrderError):
            TimeScale.integers(3, 1)

    def test_quantum(self):
        ts = TimeScale.quantum(2.0, 8.0, include_zero=True)
        assert [c.x for c in ts.components] == [0.0, 1.0, 2.0, 4.0, 8.0]

    def test_quantum_needs_q_above_one(self):
        with pytest.raises(ParameterError):
            TimeScale.quantum(1.0, 8.0)

    def test_contains(self, mixed):
        assert mixed.contains(0.0)
        assert mixed.contains(1.5)
        assert not mixed.contains(0.5)
        assert not mixed.contains(3.0)


class TestJumpOperators:
    """Tests for sigma, rho and graininess."""

    def test_mixed_scale(self, mixed):
        assert sigma(mixed, 0.0) == 1.0
        assert sigma(mixed, 1.5) == 1.5
        assert rho(mixed, 1.0) == 0.0
        assert rho(mixed, 0.0) == 0.0
        assert graininess(mixed, 0.0) == 1.0
        assert graininess(mixed, 1.5) == 0.0

    def test_maximum_is_fixed(self, mixed):
        assert sigma(mixed, 2.0) == 2.0

    def test_integers(self):
        ts = TimeScale.integers(0, 10)
        assert sigma(ts, 3.0) == 4.0
        assert rho(ts, 3.0) == 2.0
        assert graininess(ts, 3.0) == 1.0

    def test_off_scale_raises(self, mixed):
        with pytest.raises(DomainError):
            sigma(mixed, 0.5)

    def test_kappa_drops_scattered_max(self):
        ts = TimeScale.integers(0, 10)
        assert kappa_restrict(ts) == TimeScale.integers(0, 9)

    def test_kappa_keeps_dense_max(self, mixed):
        assert kappa_restrict(mixed) is mixed

    def test_kappa_keeps_single_point(self):
        ts = TimeScale.points([3.0])
        assert kappa_restrict(ts) is ts

    @given(st.lists(st.integers(-50, 50), min_size=2, max_size=12, unique=True))
    @settings(max_examples=50)
    def test_jumps_bracket_every_point(self, xs):
        ts = TimeScale.points(xs)
        for x in xs:
            assert rho(ts, x) <= x <= sigma(ts, x)
            assert graininess(ts, x) == sigma(ts, x) - x


class TestGrid:
    """Tests for discretization grids."""

    def test_interval_nodes(self):
        grid = build_grid(TimeScale.interval(0.0, 1.0), 2)
        assert list(grid.t) == [0.0, 0.5, 1.0]
        assert grid.kinds == (NODE_PANEL,) * 3

    def test_mixed_nodes(self, mixed):
        grid = build_grid(mixed, 4)
        assert list(grid.t) == [0.0, 1.0, 1.25, 1.5, 1.75, 2.0]
        assert grid.kinds[0] == NODE_ISOLATED
        assert list(grid.right_scattered) == [True, False, False, False, False, False]
        assert grid.mu[0] == 1.0

    def test_bad_resolution(self, mixed):
        with pytest.raises(ParameterError):
            build_grid(mixed, 0)

    def test_index_of(self, mixed):
        grid = build_grid(mixed, 4)
        assert grid.index_of(1.5) == 3

    def test_index_of_non_node(self, mixed):
        grid = build_grid(mixed, 4)
        with pytest.raises(ResolutionError):
            grid.index_of(1.1)

    def test_index_of_off_scale(self, mixed):
        grid = build_grid(mixed, 4)
        with pytest.raises(DomainError):
            grid.index_of(0.5)

    def test_subgrid_restricts_scale(self, mixed):
        grid = build_grid(mixed, 4)
        sub = grid.subgrid(1.0, 1.5)
        assert list(sub.t) == [1.0, 1.25, 1.5]
        assert sub.timescale.min == 1.0 and sub.timescale.max == 1.5

    def test_to_frame(self, mixed):
        frame = build_grid(mixed, 2).to_frame()
        assert list(frame.columns) == ["t", "kind", "sigma", "rho", "graininess"]
        assert frame.loc[0, "sigma"] == 1.0
        assert frame.loc[1, "rho"] == 0.0


class TestDocuments:
    """Tests for JSON time scale documents."""

    def test_round_trip(self, mixed, tmp_path):
        path = save_timescale_json(mixed, tmp_path / "ts.json")
        assert load_timescale_json(path) == mixed

    def test_unknown_top_level_key(self):
        with pytest.raises(InputError):
            TimeScale.from_dict({"components": [{"point": 0}], "extra": 1})

    def test_unknown_component_key(self):
        with pytest.raises(InputError):
            TimeScale.from_dict({"components": [{"segment": [0, 1]}]})

    def test_describe(self):
        info = TimeScale.integers(0, 3).describe()
        assert info["is_discrete"] is True
        assert info["max_left_scattered"] is True
        assert len(info["kappa"]) == 3
