"""
Central finite-difference stencils and grid operators.
Infrastructure Layer - Numerics Package
"""

from typing import Callable, Dict, Sequence

import numpy as np

from infrastructure.errors import BadParameter, GridTooCoarse

# offset -> weight, before scaling by h^order
_STENCILS: Dict[int, Dict[int, float]] = {
    0: {0: 1.0},
    1: {-1: -0.5, 1: 0.5},
    2: {-1: 1.0, 0: -2.0, 1: 1.0},
    3: {-2: -0.5, -1: 1.0, 1: -1.0, 2: 0.5},
}

MIN_INTERIOR_NODES = 5


def central_partial(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x: float,
    y: float,
    nx: int,
    ny: int,
    h: float,
) -> complex:
    """
    Central-difference estimate of d^(nx+ny) f / dx^nx dy^ny at (x, y).

    Mixed partials use the tensor product of the one-dimensional stencils.

    Args:
        f: Vectorized function of (x, y)
        x, y: Evaluation point
        nx, ny: Derivative orders, each at most 3
        h: Step size

    Returns:
        Finite-difference estimate
    """
    if nx not in _STENCILS or ny not in _STENCILS:
        raise BadParameter(f"no central stencil for partial ({nx}, {ny})")
    wx, wy = _STENCILS[nx], _STENCILS[ny]
    offsets = [(a, b, wa * wb) for a, wa in wx.items() for b, wb in wy.items()]
    xs = np.array([x + a * h for a, _, _ in offsets])
    ys = np.array([y + b * h for _, b, _ in offsets])
    weights = np.array([w for _, _, w in offsets])
    values = np.asarray(f(xs, ys))
    return complex(np.sum(weights * values) / h ** (nx + ny))


def richardson_partial(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    x: float,
    y: float,
    nx: int,
    ny: int,
    h: float,
) -> complex:
    """Central difference extrapolated from steps h and h/2."""
    coarse = central_partial(f, x, y, nx, ny, h)
    fine = central_partial(f, x, y, nx, ny, h / 2)
    return (4.0 * fine - coarse) / 3.0


def require_fd_grid(shape: Sequence[int]) -> None:
    """Raise GridTooCoarse unless every axis has enough interior nodes."""
    interior = [n - 2 for n in shape]
    if min(interior) < MIN_INTERIOR_NODES:
        raise GridTooCoarse(
            f"grid {shape[0]}x{shape[1]} has {min(interior)} interior nodes on some axis; "
            f"finite-difference checks need at least {MIN_INTERIOR_NODES}"
        )


def grid_gradient(field: np.ndarray, hx: float, hy: float) -> np.ndarray:
    """
    Central-difference gradient of a grid field indexed [ix, iy].

    Returns:
        Array of shape (2, nx, ny); component k is NaN on the boundary of axis k
    """
    field = np.asarray(field, dtype=float)
    grad = np.full((2,) + field.shape, np.nan)
    grad[0, 1:-1, :] = (field[2:, :] - field[:-2, :]) / (2.0 * hx)
    grad[1, :, 1:-1] = (field[:, 2:] - field[:, :-2]) / (2.0 * hy)
    return grad


def laplace_beltrami(
    field: np.ndarray,
    g11: np.ndarray,
    g12: np.ndarray,
    g22: np.ndarray,
    hx: float,
    hy: float,
) -> np.ndarray:
    """
    Laplace-Beltrami operator (1/sqrt g) d_i (sqrt g g^ij d_j f) on a grid.

    Diagonal terms use half-node fluxes (5-point stencil); the g^12 cross terms
    add the four corner nodes. Second order in (hx, hy).

    Returns:
        Array shaped like `field`; boundary nodes are NaN
    """
    require_fd_grid(np.shape(field))
    f = np.asarray(field, dtype=float)
    det = g11 * g22 - g12 * g12
    root = np.sqrt(det)
    a = root * g22 / det
    b = -root * g12 / det
    c = root * g11 / det

    out = np.full(f.shape, np.nan)
    mid = (slice(1, -1), slice(1, -1))

    flux_xp = 0.5 * (a[2:, 1:-1] + a[1:-1, 1:-1]) * (f[2:, 1:-1] - f[1:-1, 1:-1])
    flux_xm = 0.5 * (a[1:-1, 1:-1] + a[:-2, 1:-1]) * (f[1:-1, 1:-1] - f[:-2, 1:-1])
    term_xx = (flux_xp - flux_xm) / hx**2

    flux_yp = 0.5 * (c[1:-1, 2:] + c[1:-1, 1:-1]) * (f[1:-1, 2:] - f[1:-1, 1:-1])
    flux_ym = 0.5 * (c[1:-1, 1:-1] + c[1:-1, :-2]) * (f[1:-1, 1:-1] - f[1:-1, :-2])
    term_yy = (flux_yp - flux_ym) / hy**2

    term_xy = (
        b[2:, 1:-1] * (f[2:, 2:] - f[2:, :-2]) - b[:-2, 1:-1] * (f[:-2, 2:] - f[:-2, :-2])
    ) / (4.0 * hx * hy)
    term_yx = (
        b[1:-1, 2:] * (f[2:, 2:] - f[:-2, 2:]) - b[1:-1, :-2] * (f[2:, :-2] - f[:-2, :-2])
    ) / (4.0 * hx * hy)

    out[mid] = (term_xx + term_yy + term_xy + term_yx) / root[mid]
    return out


def loglog_slope(steps: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(step)."""
    steps = np.asarray(steps, dtype=float)
    errors = np.asarray(errors, dtype=float)
    return float(np.polyfit(np.log(steps), np.log(errors), 1)[0])
