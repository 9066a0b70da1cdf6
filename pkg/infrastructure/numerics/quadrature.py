"""
Gauss-Legendre quadrature on intervals and rectangles.
Infrastructure Layer - Numerics Package
"""

from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from infrastructure.errors import BadParameter

Bounds = Tuple[float, float, float, float]


@lru_cache(maxsize=32)
def gauss_legendre_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the `order`-point rule on [-1, 1]."""
    if order < 1:
        raise BadParameter(f"quadrature order must be positive, got {order}")
    nodes, weights = leggauss(order)
    return nodes, weights


def interval_nodes(a: float, b: float, cells: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Composite rule on [a, b] with `cells` equal cells.

    Returns:
        Nodes and weights, ordered cell by cell
    """
    if cells < 1:
        raise BadParameter(f"cell count must be positive, got {cells}")
    nodes, weights = gauss_legendre_rule(order)
    edges = np.linspace(a, b, cells + 1)
    half = 0.5 * np.diff(edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    xs = (centers[:, None] + half[:, None] * nodes[None, :]).ravel()
    ws = (half[:, None] * weights[None, :]).ravel()
    return xs, ws


def rectangle_nodes(
    bounds: Bounds, cells: Tuple[int, int], order: int
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Tensor-product composite rule on [x0, x1] x [y0, y1].

    Returns:
        Flattened x nodes, y nodes and weights in a fixed cell ordering
    """
    x0, x1, y0, y1 = bounds
    xs, wx = interval_nodes(x0, x1, cells[0], order)
    ys, wy = interval_nodes(y0, y1, cells[1], order)
    grid_x, grid_y = np.meshgrid(xs, ys, indexing="ij")
    weights = np.outer(wx, wy)
    return grid_x.ravel(), grid_y.ravel(), weights.ravel()


def integrate_rectangle(
    integrand: Callable[[np.ndarray, np.ndarray], np.ndarray],
    bounds: Bounds,
    cells: Tuple[int, int] = (20, 20),
    order: int = 8,
) -> float:
    """
    Integrate a vectorized real integrand over a rectangle.

    np.sum on the contiguous weighted array uses pairwise summation, so the
    result does not depend on anything but the inputs.
    """
    xs, ys, weights = rectangle_nodes(bounds, cells, order)
    values = np.asarray(integrand(xs, ys), dtype=float)
    return float(np.sum(np.ascontiguousarray(weights * values)))


def integrate_interval(
    integrand: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cells: int = 16,
    order: int = 8,
) -> float:
    xs, ws = interval_nodes(a, b, cells, order)
    values = np.asarray(integrand(xs), dtype=float)
    return float(np.sum(np.ascontiguousarray(ws * values)))
