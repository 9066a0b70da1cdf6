"""
Application settings and tolerance profiles.
Infrastructure Layer - Config Package
"""

from functools import lru_cache
from typing import Dict

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from infrastructure.errors import BadParameter

load_dotenv()


class Settings(BaseSettings):
    """
    Process-wide settings read from HSL_* environment variables and .env files.
    """

    model_config = SettingsConfigDict(env_prefix="HSL_", env_file=".env", extra="ignore")

    profile: str = Field("default", description="Tolerance profile used when --profile is absent")
    log_level: str = Field("WARNING", description="Root logging level")
    output_dir: str = Field("./reports", description="Directory for reports without explicit --out")
    default_grid: int = Field(41, ge=3, description="Grid size per axis when --grid is absent")
    record_wall_time: bool = Field(False, description="Write wall_ms into report files")


class ToleranceProfile(BaseModel):
    """Tolerances used to turn residuals into pass/fail verdicts."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Profile name")
    algebraic_tol: float = Field(1e-8, gt=0, description="Jet-exact pointwise identities")
    fd_tol: float = Field(1e-5, gt=0, description="Grid finite-difference quantities")
    constraint_tol: float = Field(1e-10, gt=0, description="Sphere/quadric lift constraint")


PROFILES: Dict[str, ToleranceProfile] = {
    "strict": ToleranceProfile(name="strict", algebraic_tol=1e-10, fd_tol=1e-6, constraint_tol=1e-12),
    "default": ToleranceProfile(name="default", algebraic_tol=1e-8, fd_tol=1e-5, constraint_tol=1e-10),
    "sweep": ToleranceProfile(name="sweep", algebraic_tol=1e-6, fd_tol=1e-4, constraint_tol=1e-8),
}


def get_tolerance_profile(name: str) -> ToleranceProfile:
    """
    Look up a built-in tolerance profile.

    Args:
        name: One of strict, default, sweep

    Returns:
        The matching ToleranceProfile
    """
    try:
        return PROFILES[name]
    except KeyError:
        known = ", ".join(PROFILES)
        raise BadParameter(f"unknown tolerance profile '{name}' (known: {known})") from None


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get the cached settings instance."""
    return Settings()


def reset_settings() -> None:
    """Drop the cached settings so the environment is read again."""
    get_settings.cache_clear()
