"""
Shared fixtures for the test suite.
"""

import pytest

from data_access.repositories.catalog_repository import catalog_repository
from infrastructure.config.settings import get_tolerance_profile, reset_settings


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test reads HSL_* settings from a clean environment."""
    for name in ("HSL_PROFILE", "HSL_LOG_LEVEL", "HSL_OUTPUT_DIR", "HSL_DEFAULT_GRID", "HSL_RECORD_WALL_TIME"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def repository():
    return catalog_repository


@pytest.fixture
def default_profile():
    return get_tolerance_profile("default")


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Temporary HSL_OUTPUT_DIR for commands that write reports."""
    target = tmp_path / "reports"
    monkeypatch.setenv("HSL_OUTPUT_DIR", str(target))
    reset_settings()
    return target
