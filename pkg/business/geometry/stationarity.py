"""
Grid-level stationarity quantities.
Business Layer - Geometry Package
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from business.geometry.surface import SurfaceField
from infrastructure.errors import ContractViolation
from infrastructure.numerics.finite_differences import grid_gradient, laplace_beltrami, require_fd_grid


@dataclass(frozen=True, eq=False)
class StationarityScalars:
    """
    delta alpha_H and d alpha_H are pointwise (jet-exact); the Laplacian of |H|^2
    is a finite-difference value, NaN on boundary nodes.
    """

    delta_alpha: np.ndarray
    d_alpha: np.ndarray
    laplacian_abs_H_sq: np.ndarray

    @property
    def interior(self) -> np.ndarray:
        return ~np.isnan(self.laplacian_abs_H_sq)


def _require_grid(field: SurfaceField) -> None:
    if field.hx is None or field.hy is None or field.xs.ndim != 2:
        raise ContractViolation(f"{field.name}: grid quantities need a tensor-grid field")
    require_fd_grid(field.shape)


def stationarity_scalars(field: SurfaceField) -> StationarityScalars:
    """
    delta alpha_H, d alpha_H and Laplace-Beltrami of |H|^2 on a grid field.

    Raises:
        GridTooCoarse: fewer than 5 interior nodes on an axis
    """
    _require_grid(field)
    laplacian = laplace_beltrami(
        field.abs_H_sq, field.g[0, 0], field.g[0, 1], field.g[1, 1], field.hx, field.hy
    )
    return StationarityScalars(field.delta_alpha, field.d_alpha, laplacian)


def mean_curvature_scale(field: SurfaceField) -> float:
    """max(1, sup |H|^2) over the field."""
    return max(1.0, float(np.nanmax(field.abs_H_sq)))


def bochner_residual(
    field: SurfaceField, scalars: StationarityScalars, scale: Optional[float] = None
) -> np.ndarray:
    """
    1/2 Laplacian |H|^2 - K |H|^2 - |nabla-perp H|^2 (Ric = K g on surfaces),
    divided by `scale`, max(1, sup |H|^2) when omitted.

    The difference error of the Laplacian grows with |H|^2, so an unscaled
    residual of a thin cylinder exceeds any fixed tolerance.
    NaN on boundary nodes.
    """
    residual = (
        0.5 * scalars.laplacian_abs_H_sq
        - field.K_intrinsic * field.abs_H_sq
        - field.nabla_perp_H_norm**2
    )
    return residual / (scale if scale is not None else mean_curvature_scale(field))


def scalar_curvature_along_JH(field: SurfaceField) -> np.ndarray:
    """
    dK(JH) with JH = -H^k d_k, from central differences of the K field,
    divided by max(1, sup |H|).

    NaN on boundary nodes.
    """
    _require_grid(field)
    grad = grid_gradient(field.K_intrinsic, field.hx, field.hy)
    along = -(field.H_coords[0] * grad[0] + field.H_coords[1] * grad[1])
    return along / np.sqrt(mean_curvature_scale(field))
