"""
Checks that integrate over a fundamental domain or compare several grids.
Business Layer - Verification Package
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from business.geometry.stationarity import bochner_residual, mean_curvature_scale, stationarity_scalars
from business.geometry.surface import compute_surface_field
from data_access.catalog.entry import CatalogEntry
from infrastructure.config.settings import ToleranceProfile, get_tolerance_profile
from infrastructure.errors import BadParameter, Unsupported
from infrastructure.geometry.immersion import ImmersionMap
from infrastructure.numerics.finite_differences import loglog_slope
from infrastructure.numerics.quadrature import interval_nodes, rectangle_nodes

logger = logging.getLogger(__name__)


def _immersion(target: Union[CatalogEntry, ImmersionMap]) -> ImmersionMap:
    return target.immersion if isinstance(target, CatalogEntry) else target


def _require_doubly_periodic(immersion: ImmersionMap) -> Tuple[float, float]:
    periods = immersion.periods
    if periods[0] is None or periods[1] is None:
        raise Unsupported(f"{immersion.name} is not periodic on both axes; no compact fundamental domain")
    return periods[0], periods[1]


# ---------------------------------------------------------------------------- Gauss-Bonnet


@dataclass(frozen=True)
class GaussBonnetResult:
    """int K dA over a fundamental domain; a torus has Euler characteristic 0."""

    integral: float
    euler_characteristic: float
    residual: float
    tolerance: float
    passed: bool


def gauss_bonnet_flat(
    entry: Union[CatalogEntry, ImmersionMap],
    cells: Tuple[int, int] = (8, 8),
    order: int = 8,
    profile: Union[ToleranceProfile, str, None] = None,
) -> GaussBonnetResult:
    """
    Integrate K sqrt(det g) over one fundamental domain by Gauss-Legendre
    quadrature.

    Raises:
        Unsupported: the entry is not periodic on both axes
    """
    immersion = _immersion(entry)
    px, py = _require_doubly_periodic(immersion)
    if profile is None or isinstance(profile, str):
        profile = get_tolerance_profile(profile or "default")

    x0, y0 = immersion.domain.x0, immersion.domain.y0
    xs, ys, weights = rectangle_nodes((x0, x0 + px, y0, y0 + py), cells, order)
    surface = compute_surface_field(immersion, xs, ys, grid=False)
    area_element = np.sqrt(surface.det_g)
    integral = float(np.sum(np.ascontiguousarray(weights * surface.K_intrinsic * area_element)))
    residual = abs(integral)
    logger.debug("Gauss-Bonnet for %s: int K dA = %.3e", immersion.name, integral)
    return GaussBonnetResult(
        integral, integral / (2.0 * np.pi), residual, profile.fd_tol, residual < profile.fd_tol
    )


# ---------------------------------------------------------------------------- growth hypothesis


def growth_ratio(
    f_values: Sequence[float],
    vol_values: Sequence[float],
    p: float,
    r_list: Sequence[float],
) -> np.ndarray:
    """
    f(r)^p Vol(B_r) / (r^2 log r) for each radius.

    A pure formula evaluator: it says nothing about the global geometry.

    Raises:
        BadParameter: r <= 1, p <= 2, mismatched lengths or radii not increasing
    """
    f = np.asarray(f_values, dtype=float)
    vol = np.asarray(vol_values, dtype=float)
    r = np.asarray(r_list, dtype=float)
    if not (f.shape == vol.shape == r.shape) or r.ndim != 1:
        raise BadParameter("f_values, vol_values and r_list must be 1-D of equal length")
    if p <= 2:
        raise BadParameter(f"growth exponent p must exceed 2, got {p}")
    if np.any(r <= 1.0):
        raise BadParameter(f"radii must exceed 1 (log r > 0), got min {float(np.min(r))}")
    if np.any(np.diff(r) <= 0):
        raise BadParameter("radii must be strictly increasing")
    return f**p * vol / (r**2 * np.log(r))


# ---------------------------------------------------------------------------- Maslov periods


@dataclass(frozen=True)
class MaslovPeriods:
    """
    Integrals of mu = alpha_H / pi along the two generating cycles.

    Closed Maslov forms on a torus have integer periods.
    """

    periods: Tuple[float, float]
    integer_defect: float
    tolerance: float
    passed: bool

    @property
    def indices(self) -> Tuple[int, int]:
        return (int(round(self.periods[0])), int(round(self.periods[1])))


def maslov_periods(
    entry: Union[CatalogEntry, ImmersionMap],
    cells: int = 16,
    order: int = 8,
    profile: Union[ToleranceProfile, str, None] = None,
) -> MaslovPeriods:
    """
    Integrate mu(d_x) along the x-cycle through the domain's mid-height and
    mu(d_y) along the y-cycle through its mid-width.

    Raises:
        Unsupported: the entry is not periodic on both axes
    """
    immersion = _immersion(entry)
    px, py = _require_doubly_periodic(immersion)
    if profile is None or isinstance(profile, str):
        profile = get_tolerance_profile(profile or "default")
    domain = immersion.domain
    x_mid = 0.5 * (domain.x0 + domain.x1)
    y_mid = 0.5 * (domain.y0 + domain.y1)

    xs, wx = interval_nodes(domain.x0, domain.x0 + px, cells, order)
    along_x = compute_surface_field(immersion, xs, np.full_like(xs, y_mid), grid=False)
    ys, wy = interval_nodes(domain.y0, domain.y0 + py, cells, order)
    along_y = compute_surface_field(immersion, np.full_like(ys, x_mid), ys, grid=False)

    period_x = float(np.sum(np.ascontiguousarray(wx * along_x.mu[0])))
    period_y = float(np.sum(np.ascontiguousarray(wy * along_y.mu[1])))
    defect = max(abs(period_x - round(period_x)), abs(period_y - round(period_y)))
    return MaslovPeriods((period_x, period_y), defect, profile.fd_tol, defect < profile.fd_tol)


# ---------------------------------------------------------------------------- grid refinement


@dataclass(frozen=True)
class RefinementStudy:
    """
    Residuals on a sequence of nested grids.

    Args:
        sizes: Nodes per axis of each grid
        steps: Grid spacing along x of each grid
        bochner_sup: sup |Bochner residual| on each grid
        bochner_increments: sup over shared nodes of the change of the Bochner
            residual between consecutive grids (self-convergence)
        bochner_slope: log-log slope of the increments against the step
        jet_sup: sup |delta alpha_H| on each grid
        jet_spread: max - min of jet_sup over the grids
    """

    sizes: Tuple[int, ...]
    steps: Tuple[float, ...]
    bochner_sup: Tuple[float, ...]
    bochner_increments: Tuple[float, ...]
    bochner_slope: Optional[float]
    jet_sup: Tuple[float, ...]
    jet_spread: float


def refinement_study(
    target: Union[CatalogEntry, ImmersionMap],
    sizes: Sequence[int] = (17, 33, 65),
) -> RefinementStudy:
    """
    Evaluate the Bochner and delta alpha residuals on nested grids.

    Sizes must be of the form 2^k m + 1 over a common base so that every node
    of a grid is also a node of the next one.

    Raises:
        BadParameter: fewer than two sizes or grids that are not nested
    """
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 2:
        raise BadParameter("a refinement study needs at least two grid sizes")
    for coarse, fine in zip(sizes, sizes[1:]):
        if fine - 1 != 2 * (coarse - 1):
            raise BadParameter(f"grid {fine} does not refine grid {coarse} by halving")

    immersion = _immersion(target)
    domain = immersion.domain
    residuals, steps, bochner_sup, jet_sup = [], [], [], []
    scale = None
    for n in sizes:
        xs, ys = domain.grid(n, n)
        surface = compute_surface_field(immersion, xs, ys)
        scalars = stationarity_scalars(surface)
        # one scale for every grid, so increments compare like with like
        scale = scale or mean_curvature_scale(surface)
        residual = bochner_residual(surface, scalars, scale)
        residuals.append(residual)
        steps.append(surface.hx)
        bochner_sup.append(float(np.nanmax(np.abs(residual))))
        jet_sup.append(float(np.max(np.abs(scalars.delta_alpha))))

    increments = []
    for coarse, fine in zip(residuals, residuals[1:]):
        shared = fine[::2, ::2]
        # drop the coarse boundary ring, where the coarse residual is NaN
        delta = np.abs(coarse[1:-1, 1:-1] - shared[1:-1, 1:-1])
        increments.append(float(np.max(delta)))

    slope = None
    if len(increments) >= 2 and all(value > 0.0 for value in increments):
        slope = loglog_slope(steps[:-1], increments)
    logger.debug("refinement study for %s: increments %s slope %s", immersion.name, increments, slope)
    return RefinementStudy(
        sizes=sizes,
        steps=tuple(steps),
        bochner_sup=tuple(bochner_sup),
        bochner_increments=tuple(increments),
        bochner_slope=slope,
        jet_sup=tuple(jet_sup),
        jet_spread=max(jet_sup) - min(jet_sup),
    )
