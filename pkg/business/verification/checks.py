"""
Named pass/fail checks over a sampled parameter grid.
Business Layer - Verification Package

Every check reduces a residual field to its supremum over the grid, together
with the sample where it is attained. Jet-exact pointwise identities use the
profile's algebraic tolerance; grid finite-difference quantities use fd_tol.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from business.geometry.stationarity import (
    bochner_residual,
    scalar_curvature_along_JH,
    stationarity_scalars,
)
from business.geometry.surface import SurfaceField, compute_surface_field
from data_access.catalog.entry import (
    FLAG_FLAT,
    FLAG_MINIMAL,
    FLAG_PARALLEL_A,
    CatalogEntry,
    ExpectedProperties,
)
from infrastructure.config.settings import ToleranceProfile, get_tolerance_profile
from infrastructure.errors import GridTooCoarse
from infrastructure.geometry.immersion import ImmersionMap, Rectangle

logger = logging.getLogger(__name__)

MIN_CHECK_GRID = 9

# |nabla A| involves third derivatives of the lift and loses about two digits.
PARALLEL_A_FACTOR = 100.0

CHECK_ORDER = (
    "lift_constraint",
    "lagrangian",
    "cubic_symmetry",
    "trace_consistency",
    "curvature_agreement",
    "hamiltonian_stationary",
    "maslov_closed",
    "parallel_H",
    "parallel_JH_transfer",
    "constant_H",
    "ricci_JH",
    "scalar_curvature_along_JH",
    "bochner_residual",
    "flat_or_minimal",
    "wintgen",
)

EXPECTED_CHECK_ORDER = ("flat", "parallel_A", "minimal", "closed_form_H")


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one named check.

    Args:
        name: Check name
        sup_residual: Supremum of the residual over the grid, never negative
        tolerance: Threshold the residual is compared against
        passed: Verdict
        argmax_point: Parameter point where the supremum is attained
        signed_extreme: Signed maximum for one-sided checks (wintgen)
    """

    name: str
    sup_residual: float
    tolerance: float
    passed: bool
    argmax_point: Optional[Tuple[float, float]]
    signed_extreme: Optional[float] = None


@dataclass(frozen=True)
class CheckReport:
    """All check results of one run."""

    entry_id: str
    params: Dict[str, float]
    grid: Tuple[int, int]
    domain: Rectangle
    profile: ToleranceProfile
    checks: Tuple[CheckResult, ...]
    wall_ms: float
    near_degenerate: bool = False
    control: bool = False
    surface: Optional[SurfaceField] = field(default=None, repr=False, compare=False)

    @property
    def overall_pass(self) -> bool:
        return all(check.passed for check in self.checks)

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def failed(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


def _sup(
    name: str,
    residual: np.ndarray,
    tolerance: float,
    field: SurfaceField,
) -> CheckResult:
    """Supremum of |residual|, NaN entries (grid boundary) ignored; all-NaN gives inf and fails."""
    values = np.abs(np.asarray(residual, dtype=float))
    finite = np.where(np.isnan(values), -np.inf, values)
    index = np.unravel_index(int(np.argmax(finite)), finite.shape)
    sup = float(finite[index])
    if not np.isfinite(sup):
        sup = float("inf")
    point = (float(field.xs[index]), float(field.ys[index]))
    return CheckResult(name, sup, tolerance, bool(sup < tolerance), point)


def _one_sided(name: str, signed: np.ndarray, tolerance: float, field: SurfaceField) -> CheckResult:
    """max of a signed residual; passes when below the tolerance. NaN counts as +inf."""
    signed = np.where(np.isnan(signed), np.inf, signed)
    index = np.unravel_index(int(np.argmax(signed)), signed.shape)
    extreme = float(signed[index])
    point = (float(field.xs[index]), float(field.ys[index]))
    return CheckResult(name, max(0.0, extreme), tolerance, bool(extreme < tolerance), point, extreme)


def _maslov_norm(field: SurfaceField) -> np.ndarray:
    """|alpha_H| = sqrt(g^ij alpha_i alpha_j)."""
    g = field.g
    det = field.det_g
    g_inv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / det
    squared = np.einsum("ij...,i...,j...->...", g_inv, field.alpha, field.alpha)
    return np.sqrt(np.maximum(squared, 0.0))


def _core_checks(field: SurfaceField, profile: ToleranceProfile) -> List[CheckResult]:
    alg, fd = profile.algebraic_tol, profile.fd_tol
    scalars = stationarity_scalars(field)
    abs_H = field.abs_H
    K = field.K_intrinsic

    # stddev of |H|, located at the largest deviation from the mean
    spread = float(np.std(abs_H))
    worst = _sup("constant_H", abs_H - np.mean(abs_H), alg, field).argmax_point
    constant_H = CheckResult("constant_H", spread, alg, bool(spread < alg), worst)

    sup_K = _sup("flat_or_minimal", K, alg, field)
    sup_H = _sup("flat_or_minimal", abs_H, alg, field)
    flat_or_minimal = sup_K if sup_K.sup_residual <= sup_H.sup_residual else sup_H

    trace_defect = np.maximum(
        np.abs(field.abs_H_sq - field.abs_H_sq_trace), np.abs(field.abs_H_sq - field.abs_H_sq_ambient)
    )
    return [
        _sup("lift_constraint", field.lift_residual, profile.constraint_tol, field),
        _sup("lagrangian", np.maximum(field.omega_pullback, field.horizontality), alg, field),
        _sup("cubic_symmetry", field.cubic_asymmetry, alg, field),
        _sup("trace_consistency", trace_defect, alg, field),
        _sup("curvature_agreement", K - field.K_gauss, alg, field),
        _sup("hamiltonian_stationary", scalars.delta_alpha, alg, field),
        _sup("maslov_closed", scalars.d_alpha, alg, field),
        _sup("parallel_H", field.nabla_perp_H_norm, alg, field),
        _sup("parallel_JH_transfer", field.nabla_JH_norm - field.nabla_perp_H_norm, alg, field),
        constant_H,
        _sup("ricci_JH", K * _maslov_norm(field), alg, field),
        _sup("scalar_curvature_along_JH", scalar_curvature_along_JH(field), fd, field),
        _sup("bochner_residual", bochner_residual(field, scalars), fd, field),
        flat_or_minimal,
        _one_sided("wintgen", K + field.rho_N - field.c - 0.25 * field.abs_H_sq, alg, field),
    ]


def _expected_checks(
    field: SurfaceField, expected: ExpectedProperties, profile: ToleranceProfile
) -> List[CheckResult]:
    alg = profile.algebraic_tol
    results = []
    if FLAG_FLAT in expected:
        results.append(_sup("flat", field.K_intrinsic, alg, field))
    if FLAG_PARALLEL_A in expected:
        results.append(_sup("parallel_A", field.nabla_A_norm, PARALLEL_A_FACTOR * alg, field))
    if FLAG_MINIMAL in expected:
        results.append(_sup("minimal", field.abs_H, alg, field))
    if expected.closed_form_abs_H is not None:
        results.append(_sup("closed_form_H", field.abs_H - expected.closed_form_abs_H, alg, field))
    return results


def run_checks(
    target: Union[CatalogEntry, ImmersionMap],
    grid: Tuple[int, int] = (41, 41),
    profile: Union[ToleranceProfile, str, None] = None,
    domain: Optional[Rectangle] = None,
) -> CheckReport:
    """
    Run the check suite on a catalog entry or a bare immersion.

    Args:
        target: CatalogEntry (expected-property checks included) or ImmersionMap
        grid: Nodes per axis, both at least 9
        profile: ToleranceProfile or profile name; "default" when omitted
        domain: Sampling rectangle overriding the entry's default domain

    Returns:
        CheckReport with results in a fixed order

    Raises:
        GridTooCoarse: fewer than 9 nodes on an axis
        DegenerateImmersion, BadLift: at the first offending sample
    """
    nx, ny = grid
    if nx < MIN_CHECK_GRID or ny < MIN_CHECK_GRID:
        raise GridTooCoarse(
            f"grid {nx}x{ny} is too coarse; checks need at least {MIN_CHECK_GRID}x{MIN_CHECK_GRID}"
        )
    if profile is None or isinstance(profile, str):
        profile = get_tolerance_profile(profile or "default")

    if isinstance(target, CatalogEntry):
        immersion, expected = target.immersion, target.expected
        entry_id, params = target.id, dict(target.params)
        near_degenerate, control = target.near_degenerate, target.control
    else:
        immersion, expected = target, None
        entry_id, params = target.name, {}
        near_degenerate = control = False
    if domain is not None:
        immersion = immersion.with_domain(domain)

    started = time.perf_counter()
    xs, ys = immersion.domain.grid(nx, ny)
    surface = compute_surface_field(immersion, xs, ys)
    results = _core_checks(surface, profile)
    if expected is not None:
        results.extend(_expected_checks(surface, expected, profile))
    wall_ms = (time.perf_counter() - started) * 1000.0

    report = CheckReport(
        entry_id=entry_id,
        params=params,
        grid=(nx, ny),
        domain=immersion.domain,
        profile=profile,
        checks=tuple(results),
        wall_ms=wall_ms,
        near_degenerate=near_degenerate,
        control=control,
        surface=surface,
    )
    for check in report.failed():
        logger.info("%s: %s failed (%.3e >= %.1e)", entry_id, check.name, check.sup_residual, check.tolerance)
    logger.debug("%s checked on %dx%d in %.1f ms", entry_id, nx, ny, wall_ms)
    return report
