"""
Pydantic schemas for report files.
Presentation Layer - Schemas Package

Field order is the serialization order; reports are dumped with json.dumps,
whose float repr is the shortest round-trip form. Non-finite floats (a
residual that overflowed or went NaN) are written as null.
"""

import json
import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


def _finite_or_null(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _finite_or_null(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite_or_null(item) for item in value]
    return value


class ReportModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    def to_json(self) -> str:
        payload = _finite_or_null(self.model_dump(by_alias=True))
        return json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


class CheckSchema(ReportModel):
    """One check result."""

    name: str
    sup_residual: float
    tolerance: float
    passed: bool = Field(..., alias="pass")
    argmax_point: Optional[Tuple[float, float]] = None


class CheckReportSchema(ReportModel):
    """Report of the verify command."""

    entry: str
    params: Dict[str, float]
    grid: Tuple[int, int]
    profile: str
    checks: List[CheckSchema]
    overall_pass: bool
    wall_ms: Optional[float] = None
    seed: Optional[int] = None


class SweepRecordSchema(ReportModel):
    """One parameter tuple of a sweep."""

    params: Dict[str, float]
    status: str = Field(..., description="checked, skipped or aborted")
    overall_pass: Optional[bool] = None
    near_degenerate: bool = False
    violated_clause: Optional[str] = None
    error: Optional[str] = Field(None, description="message of a skipped or aborted tuple")
    worst: Dict[str, float] = Field(default_factory=dict, description="sup residual per check")


class SweepReportSchema(ReportModel):
    """Aggregate report of the sweep command."""

    entry: str
    grid: Tuple[int, int]
    profile: str
    ranges: Dict[str, List[float]]
    records: List[SweepRecordSchema]
    checked: int
    skipped: int
    passed: int
    overall_pass: bool
    wall_ms: Optional[float] = None


class BumpSchema(ReportModel):
    """One bump of the variation oracle and its first variation."""

    center: Tuple[float, float]
    radius: float
    amplitude: float
    first_variation: float
    area_plus: float
    area_minus: float
    lagrangian_defect: float = Field(..., description="sup |omega| of F_h and F_-h over the bump support")


class VariationReportSchema(ReportModel):
    """Report of the variation command."""

    entry: str
    params: Dict[str, float]
    seed: int
    h: float
    bumps: List[BumpSchema]
    max_abs: float
    threshold: float
    passed: bool = Field(..., alias="pass")
    wall_ms: Optional[float] = None
