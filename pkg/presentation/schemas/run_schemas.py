"""
Pydantic schemas for command configuration.
Presentation Layer - Schemas Package
"""

from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from infrastructure.config.settings import PROFILES


class RunConfig(BaseModel):
    """Validated configuration of one verify / dump-fields / variation run."""

    model_config = ConfigDict(frozen=True)

    entry: str = Field(..., min_length=1, description="Catalog entry id")
    params: Dict[str, float] = Field(default_factory=dict, description="Parameter overrides")
    grid: Tuple[int, int] = Field((41, 41), description="Nodes per axis (nx, ny)")
    domain: Optional[Tuple[float, float, float, float]] = Field(None, description="x0, x1, y0, y1 override")
    profile: str = Field("default", description="Tolerance profile name")
    out: Optional[str] = Field(None, description="Output file path")
    seed: int = Field(0, description="Seed for random bump placement")
    bumps: int = Field(5, ge=1, description="Number of bumps for the variation oracle")
    step: float = Field(1e-3, gt=0, description="Deformation step h of the variation oracle")
    timing: bool = Field(False, description="Record wall time in report files")

    @field_validator("grid")
    @classmethod
    def _positive_grid(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if min(value) < 2:
            raise ValueError(f"grid needs at least 2 nodes per axis, got {value[0]}x{value[1]}")
        return value

    @field_validator("profile")
    @classmethod
    def _known_profile(cls, value: str) -> str:
        if value not in PROFILES:
            raise ValueError(f"unknown tolerance profile '{value}' (known: {', '.join(PROFILES)})")
        return value


class SweepConfig(BaseModel):
    """Configuration of a parameter sweep; ranges map names to sampled values."""

    model_config = ConfigDict(frozen=True)

    entry: str = Field(..., min_length=1)
    ranges: Dict[str, Tuple[float, ...]] = Field(default_factory=dict)
    grid: Tuple[int, int] = Field((41, 41))
    domain: Optional[Tuple[float, float, float, float]] = None
    profile: str = Field("default")
    out: Optional[str] = None
    timing: bool = False

    @field_validator("profile")
    @classmethod
    def _known_profile(cls, value: str) -> str:
        if value not in PROFILES:
            raise ValueError(f"unknown tolerance profile '{value}' (known: {', '.join(PROFILES)})")
        return value
