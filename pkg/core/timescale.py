# core/timescale.py
"""
Time Scales and Discretization Grids

A time scale is a nonempty closed subset of the reals, represented exactly as
a finite, ordered union of closed intervals and isolated points. This module
provides the jump operators (sigma, rho), graininess, the kappa restriction
and the grids every operator in the package is evaluated on.

Usage:
    ts = TimeScale.from_components([Point(0.0), ClosedInterval(1.0, 2.0)])
    sigma(ts, 0.0)            # 1.0
    grid = build_grid(ts, 4)  # nodes 0, 1, 1.25, 1.5, 1.75, 2
"""

import bisect
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple, Union

import numpy as np
import pandas as pd

from core.errors import DomainError, InputError, OrderError, ParameterError, ResolutionError

SNAP_TOLERANCE = 1e-12

NODE_ISOLATED = "isolated"
NODE_PANEL = "panel-node"


@dataclass(frozen=True)
class ClosedInterval:
    """Closed interval [lo, hi] with lo < hi."""
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"interval bounds must be finite, got [{lo}, {hi}]")
        if not lo < hi:
            raise DomainError(f"interval requires lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def start(self) -> float:
        return self.lo

    @property
    def end(self) -> float:
        return self.hi

    def contains(self, t: float) -> bool:
        return self.lo - SNAP_TOLERANCE <= t <= self.hi + SNAP_TOLERANCE

    def to_dict(self) -> Dict[str, Any]:
        return {"interval": [self.lo, self.hi]}


@dataclass(frozen=True)
class Point:
    """Isolated point of a time scale."""
    x: float

    def __post_init__(self):
        x = float(self.x)
        if not math.isfinite(x):
            raise DomainError(f"point must be finite, got {x}")
        object.__setattr__(self, "x", x)

    @property
    def start(self) -> float:
        return self.x

    @property
    def end(self) -> float:
        return self.x

    def contains(self, t: float) -> bool:
        return abs(t - self.x) <= SNAP_TOLERANCE

    def to_dict(self) -> Dict[str, Any]:
        return {"point": self.x}


Component = Union[ClosedInterval, Point]


@dataclass(frozen=True)
class TimeScale:
    """
    Finite union of disjoint closed intervals and isolated points.

    Components are kept sorted with strictly positive gaps between
    consecutive components, so every real number belongs to at most one.
    """
    components: Tuple[Component, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise DomainError("a time scale needs at least one component")
        for prev, nxt in zip(comps, comps[1:]):
            if not nxt.start - prev.end > SNAP_TOLERANCE:
                raise DomainError(
                    f"components must be sorted with positive gaps: {prev} is followed by {nxt}"
                )
        object.__setattr__(self, "components", comps)

    # ----- factories -----

    @classmethod
    def from_components(cls, components: Iterable[Component]) -> "TimeScale":
        return cls(tuple(sorted(components, key=lambda c: (c.start, c.end))))

    @classmethod
    def interval(cls, lo: float, hi: float) -> "TimeScale":
        return cls((ClosedInterval(lo, hi),))

    @classmethod
    def points(cls, xs: Iterable[float]) -> "TimeScale":
        return cls.from_components(Point(float(x)) for x in sorted(set(float(v) for v in xs)))

    @classmethod
    def integers(cls, lo: int, hi: int) -> "TimeScale":
        if hi < lo:
            raise OrderError(f"integer range needs lo <= hi, got {lo} > {hi}")
        return cls.points(range(int(lo), int(hi) + 1))

    @classmethod
    def quantum(cls, q: float, horizon: float, include_zero: bool = False) -> "TimeScale":
        """Materialize q^k, k = 0, 1, ... up to the horizon."""
        if q <= 1:
            raise ParameterError(f"quantum scale needs q > 1, got q={q}")
        if horizon < 1:
            raise ParameterError(f"quantum horizon must be >= 1, got {horizon}")
        pts: List[float] = [0.0] if include_zero else []
        value = 1.0
        while value <= horizon + SNAP_TOLERANCE:
            pts.append(value)
            value *= q
        return cls.points(pts)

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "TimeScale":
        if set(document) != {"components"}:
            raise InputError(f"time scale document must have exactly the key 'components', got {sorted(document)}")
        comps: List[Component] = []
        for index, item in enumerate(document["components"]):
            if not isinstance(item, dict) or len(item) != 1:
                raise InputError(f"components[{index}] must be {{'interval': [lo, hi]}} or {{'point': x}}")
            if "interval" in item:
                lo, hi = item["interval"]
                comps.append(ClosedInterval(lo, hi))
            elif "point" in item:
                comps.append(Point(item["point"]))
            else:
                raise InputError(f"components[{index}] has unknown key {next(iter(item))!r}")
        return cls.from_components(comps)

    def to_dict(self) -> Dict[str, Any]:
        return {"components": [c.to_dict() for c in self.components]}

    # ----- structure -----

    @cached_property
    def _starts(self) -> List[float]:
        return [c.start for c in self.components]

    @property
    def min(self) -> float:
        return self.components[0].start

    @property
    def max(self) -> float:
        return self.components[-1].end

    @property
    def is_discrete(self) -> bool:
        return all(isinstance(c, Point) for c in self.components)

    def locate(self, t: float) -> int:
        """Index of the component containing t."""
        t = float(t)
        index = bisect.bisect_right(self._starts, t + SNAP_TOLERANCE) - 1
        if index < 0 or not self.components[index].contains(t):
            raise DomainError(f"t={t!r} is not on the time scale")
        return index

    def contains(self, t: float) -> bool:
        try:
            self.locate(t)
        except DomainError:
            return False
        return True

    def is_right_scattered(self, t: float) -> bool:
        return sigma(self, t) > t

    def is_left_scattered(self, t: float) -> bool:
        return rho(self, t) < t

    def restrict(self, lo: float, hi: float) -> "TimeScale":
        """Intersection with [lo, hi]; degenerate interval pieces become points."""
        if lo > hi:
            raise OrderError(f"restriction needs lo <= hi, got {lo} > {hi}")
        kept: List[Component] = []
        for comp in self.components:
            if isinstance(comp, Point):
                if lo - SNAP_TOLERANCE <= comp.x <= hi + SNAP_TOLERANCE:
                    kept.append(comp)
                continue
            left = comp.lo if lo <= comp.lo + SNAP_TOLERANCE else lo
            right = comp.hi if hi >= comp.hi - SNAP_TOLERANCE else hi
            if right - left > SNAP_TOLERANCE:
                kept.append(ClosedInterval(left, right))
            elif abs(right - left) <= SNAP_TOLERANCE:
                kept.append(Point(left))
        if not kept:
            raise DomainError(f"time scale has no points in [{lo}, {hi}]")
        return TimeScale(tuple(kept))

    def describe(self) -> Dict[str, Any]:
        kappa = kappa_restrict(self)
        return {
            "components": self.to_dict()["components"],
            "min": self.min,
            "max": self.max,
            "is_discrete": self.is_discrete,
            "kappa": kappa.to_dict()["components"],
            "max_left_scattered": kappa is not self,
        }


def sigma(ts: TimeScale, t: float) -> float:
    """Forward jump: inf{s in ts : s > t}, with sigma(max) = max."""
    index = ts.locate(t)
    comp = ts.components[index]
    if isinstance(comp, ClosedInterval) and t < comp.hi - SNAP_TOLERANCE:
        return float(t)
    if index + 1 < len(ts.components):
        return ts.components[index + 1].start
    return comp.end


def rho(ts: TimeScale, t: float) -> float:
    """Backward jump: sup{s in ts : s < t}, with rho(min) = min."""
    index = ts.locate(t)
    comp = ts.components[index]
    if isinstance(comp, ClosedInterval) and t > comp.lo + SNAP_TOLERANCE:
        return float(t)
    if index > 0:
        return ts.components[index - 1].end
    return comp.start


def graininess(ts: TimeScale, t: float) -> float:
    gap = sigma(ts, t) - t
    return gap if gap > SNAP_TOLERANCE else 0.0


def kappa_restrict(ts: TimeScale) -> TimeScale:
    """Drop a left-scattered maximum; otherwise return ts itself."""
    last = ts.components[-1]
    if isinstance(last, Point) and len(ts.components) > 1:
        return TimeScale(ts.components[:-1])
    return ts


@dataclass(frozen=True, eq=False)
class Grid:
    """
    Discretization of a time scale: all isolated points plus every interval
    split into N equal panels.

    Besides the nodes, the grid precomputes the per-node structure every
    operator needs: component membership, right-scattered mask, graininess,
    panel list and the node range of each interval component.
    """
    timescale: TimeScale
    t: np.ndarray
    N: int = 1
    kinds: Tuple[str, ...] = field(init=False)
    component_of: np.ndarray = field(init=False, repr=False)
    right_scattered: np.ndarray = field(init=False, repr=False)
    mu: np.ndarray = field(init=False, repr=False)
    panel_left: np.ndarray = field(init=False, repr=False)
    interval_segments: Tuple[Tuple[int, int], ...] = field(init=False, repr=False)

    def __post_init__(self):
        nodes = np.array(self.t, dtype=float)
        if nodes.ndim != 1 or nodes.size == 0:
            raise DomainError("a grid needs a nonempty one-dimensional node array")
        if np.any(np.diff(nodes) <= 0):
            raise DomainError("grid nodes must be strictly increasing")
        comps = self.timescale.components
        comp_of = np.array([self.timescale.locate(x) for x in nodes], dtype=int)
        starts = np.searchsorted(comp_of, np.arange(len(comps)), side="left")
        stops = np.searchsorted(comp_of, np.arange(len(comps)), side="right")

        kinds: List[str] = []
        segments: List[Tuple[int, int]] = []
        panel_left: List[np.ndarray] = []
        for index, comp in enumerate(comps):
            start, stop = int(starts[index]), int(stops[index])
            if isinstance(comp, Point):
                if stop - start != 1:
                    raise DomainError(f"isolated point {comp.x} must appear exactly once in the grid")
                kinds.append(NODE_ISOLATED)
                continue
            if stop - start < 2:
                raise DomainError(f"interval [{comp.lo}, {comp.hi}] needs at least its two endpoints as nodes")
            if abs(nodes[start] - comp.lo) > SNAP_TOLERANCE or abs(nodes[stop - 1] - comp.hi) > SNAP_TOLERANCE:
                raise DomainError(f"interval [{comp.lo}, {comp.hi}] endpoints must be grid nodes")
            nodes[start], nodes[stop - 1] = comp.lo, comp.hi
            kinds.extend([NODE_PANEL] * (stop - start))
            segments.append((start, stop))
            panel_left.append(np.arange(start, stop - 1))

        scattered = np.zeros(nodes.size, dtype=bool)
        scattered[stops[:-1] - 1] = True
        mu = np.zeros(nodes.size)
        idx = np.flatnonzero(scattered)
        mu[idx] = nodes[idx + 1] - nodes[idx]

        for name, value in (
            ("t", nodes),
            ("component_of", comp_of),
            ("right_scattered", scattered),
            ("mu", mu),
            ("panel_left", np.concatenate(panel_left) if panel_left else np.zeros(0, dtype=int)),
        ):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "kinds", tuple(kinds))
        object.__setattr__(self, "interval_segments", tuple(segments))

    @property
    def size(self) -> int:
        return int(self.t.size)

    @property
    def panel_mask(self) -> np.ndarray:
        return np.array([k == NODE_PANEL for k in self.kinds], dtype=bool)

    @property
    def sigma_values(self) -> np.ndarray:
        out = self.t.copy()
        idx = np.flatnonzero(self.right_scattered)
        out[idx] = self.t[idx + 1]
        return out

    @property
    def rho_values(self) -> np.ndarray:
        out = self.t.copy()
        idx = np.flatnonzero(self.right_scattered) + 1
        out[idx] = self.t[idx - 1]
        return out

    def index_of(self, t: float) -> int:
        """Node index of t; off-scale is a DomainError, on-scale non-node a ResolutionError."""
        t = float(t)
        self.timescale.locate(t)
        pos = int(np.searchsorted(self.t, t))
        for cand in (pos - 1, pos):
            if 0 <= cand < self.size and abs(self.t[cand] - t) <= SNAP_TOLERANCE:
                return cand
        raise ResolutionError(f"t={t!r} is on the time scale but not a grid node (N={self.N})")

    def subgrid(self, lo: float, hi: float) -> "Grid":
        """Grid of the nodes in [lo, hi], bound to the restricted time scale."""
        i0, i1 = self.index_of(lo), self.index_of(hi)
        if i1 < i0:
            raise OrderError(f"subgrid needs lo <= hi, got {lo} > {hi}")
        if i0 == 0 and i1 == self.size - 1:
            return self
        restricted = self.timescale.restrict(self.t[i0], self.t[i1])
        return Grid(restricted, self.t[i0:i1 + 1], self.N)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t": self.t,
            "kind": list(self.kinds),
            "sigma": self.sigma_values,
            "rho": self.rho_values,
            "graininess": self.mu,
        })


def build_grid(ts: TimeScale, N: int) -> Grid:
    """Split every interval into N equal panels and keep every isolated point."""
    if int(N) != N or N < 1:
        raise ParameterError(f"grid_N must be a positive integer, got {N}")
    nodes: List[np.ndarray] = []
    for comp in ts.components:
        if isinstance(comp, Point):
            nodes.append(np.array([comp.x]))
        else:
            nodes.append(np.linspace(comp.lo, comp.hi, int(N) + 1))
    return Grid(ts, np.concatenate(nodes), int(N))


def load_timescale_json(path: Union[str, Path]) -> TimeScale:
    with open(path, "r", encoding="utf-8") as f:
        document = json.load(f)
    return TimeScale.from_dict(document)


def save_timescale_json(ts: TimeScale, path: Union[str, Path]) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(ts.to_dict(), f, indent=2)
    return str(path)
