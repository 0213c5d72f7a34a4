# tools/schemas.py
"""
Input document schemas.

Every document the CLI reads is validated here before any numerics run.
Unknown keys are rejected and pydantic names the offending field.
"""

from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.timescale import TimeScale


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class IntervalComponent(StrictModel):
    interval: Tuple[float, float]


class PointComponent(StrictModel):
    point: float


class TimeScaleDocument(StrictModel):
    components: List[Union[IntervalComponent, PointComponent]] = Field(min_length=1)

    def build(self) -> TimeScale:
        return TimeScale.from_dict(self.model_dump())


class NamedFormSpec(StrictModel):
    """A named form plus its parameters, e.g. {"name": "power", "params": {"exponent": 2}}."""
    name: str
    params: Dict[str, Any] = Field(default_factory=dict)


def _identity_psi() -> NamedFormSpec:
    return NamedFormSpec(name="identity")


class OperatorRequest(StrictModel):
    """Request document for the fracint and fracderiv commands."""
    timescale: TimeScaleDocument
    psi: NamedFormSpec = Field(default_factory=_identity_psi)
    function: Optional[NamedFormSpec] = None
    function_csv: Optional[str] = None
    alpha: float = Field(gt=0)
    beta: Optional[float] = Field(default=None, ge=0, le=1)
    origin: Optional[float] = None
    t: Optional[float] = None

    @model_validator(mode="after")
    def _one_function_source(self):
        if (self.function is None) == (self.function_csv is None):
            raise ValueError("exactly one of 'function' and 'function_csv' is required")
        return self


class IVPDocument(StrictModel):
    """Problem document for solve-ivp."""
    timescale: TimeScaleDocument
    psi: NamedFormSpec = Field(default_factory=_identity_psi)
    alpha: float = Field(gt=0, le=1)
    beta: float = Field(default=0.0, ge=0, le=1)
    rhs: NamedFormSpec
    L: Optional[float] = Field(default=None, ge=0)
    M: Optional[float] = Field(default=None, ge=0)


class ControlDocument(IVPDocument):
    """The solve-ivp document plus the steering data."""
    b_gain: float
    y1: float
    M_W: Optional[float] = Field(default=None, ge=0)
