"""
First-variation oracle for Hamiltonian stationarity in flat C^2.
Business Layer - Verification Package

A Hamiltonian deformation moves F along V = J grad f for a compactly supported
f. A surface is Hamiltonian stationary when the area does not change to first
order along every such deformation.
"""

import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np

from infrastructure.errors import BadParameter, Unsupported
from infrastructure.geometry.ambient import AmbientKind, HermitianVector, metric_pairing, symplectic_form
from infrastructure.geometry.immersion import ImmersionMap, Rectangle, eval_jet
from infrastructure.numerics import taylor_jet as tj
from infrastructure.numerics.quadrature import integrate_rectangle
from infrastructure.numerics.taylor_jet import TaylorJet

logger = logging.getLogger(__name__)

QUADRATURE_CELLS = (20, 20)
QUADRATURE_ORDER = 8
STEP_RANGE = (1e-5, 1e-2)

# exp(-1 / (1 - t^2)) is exactly 0 in double precision long before this cut
_SUPPORT_CUT = 1.0 - 1e-6


@dataclass(frozen=True)
class BumpFunction:
    """
    Smooth bump s exp(-1 / (1 - t^2)), t = |p - p0| / rho, zero for t >= 1.

    Args:
        center: (x0, y0)
        radius: rho > 0
        amplitude: s
    """

    center: Tuple[float, float]
    radius: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise BadParameter(f"bump radius must be positive, got {self.radius}")

    @property
    def support(self) -> Rectangle:
        """Bounding box of the support disc."""
        x0, y0 = self.center
        r = self.radius
        return Rectangle(x0 - r, x0 + r, y0 - r, y0 + r)

    def __call__(self, x: Any, y: Any) -> Any:
        dx = x - self.center[0]
        dy = y - self.center[1]
        t2 = (dx * dx + dy * dy) / (self.radius * self.radius)
        inside = np.real(tj.value_of(t2)) < _SUPPORT_CUT
        safe = tj.where(inside, t2, 0.0)
        value = self.amplitude * tj.exp(-tj.reciprocal(1.0 - safe))
        return tj.where(inside, value, 0.0)


def _require_flat(map: ImmersionMap) -> None:
    if map.ambient.kind is not AmbientKind.FLAT_C2:
        raise Unsupported(
            f"Hamiltonian deformations are implemented for flat C^2 only, not {map.ambient.kind.value}"
        )


def hamiltonian_deform(map: ImmersionMap, f: BumpFunction, t: float) -> ImmersionMap:
    """
    F_t = F + t J dF(grad f), grad f the metric gradient of f on the surface.

    Args:
        map: Immersion into flat C^2
        f: Bump with support strictly inside the domain
        t: Deformation parameter

    Returns:
        Deformed immersion on the same domain

    Raises:
        Unsupported: non-flat ambient
        BadParameter: support of f not strictly inside the domain
    """
    _require_flat(map)
    if not map.domain.contains_rectangle(f.support, strict=True):
        raise BadParameter(
            f"bump support {f.support.as_tuple()} is not strictly inside the domain {map.domain.as_tuple()}"
        )
    if t == 0:
        return map

    signature = map.ambient.signature

    def evaluate(x: Any, y: Any) -> Tuple[Any, ...]:
        if isinstance(x, TaylorJet):
            order = x.order
            # seeds are affine, so padding them is exact
            seed_x, seed_y = x.padded(order + 1), y.padded(order + 1)
        else:
            order = None
            shape = np.broadcast_shapes(np.shape(x), np.shape(y))
            seed_x = TaylorJet.variable(np.broadcast_to(np.asarray(x, dtype=float), shape), 0, 1)
            seed_y = TaylorJet.variable(np.broadcast_to(np.asarray(y, dtype=float), shape), 1, 1)

        components = []
        for c in map.evaluate(seed_x, seed_y):
            if not isinstance(c, TaylorJet):
                c = TaylorJet.constant(
                    np.broadcast_to(np.asarray(c, dtype=complex), seed_x.batch_shape), seed_x.order
                )
            components.append(c)
        tangents = [HermitianVector(tuple(c.diff(axis) for c in components), signature) for axis in (0, 1)]
        bump = f(seed_x, seed_y)
        df = [bump.diff(axis) for axis in (0, 1)]

        g11 = metric_pairing(tangents[0], tangents[0])
        g12 = metric_pairing(tangents[0], tangents[1])
        g22 = metric_pairing(tangents[1], tangents[1])
        inv_det = tj.reciprocal(g11 * g22 - g12 * g12)
        grad = [
            (g22 * df[0] - g12 * df[1]) * inv_det,
            (g11 * df[1] - g12 * df[0]) * inv_det,
        ]
        field = tangents[0].scale(grad[0]) + tangents[1].scale(grad[1])
        deformed = tuple(c + (1j * t) * v for c, v in zip(components, field.components))
        if order is None:
            return tuple(tj.value_of(c) for c in deformed)
        return tuple(c.truncate(order) for c in deformed)

    return ImmersionMap(
        name=f"{map.name}+hamiltonian(t={t:g})",
        ambient=map.ambient,
        evaluator=evaluate,
        domain=map.domain,
        periods=map.periods,
    )


def area(
    map: ImmersionMap,
    region: Optional[Rectangle] = None,
    cells: Tuple[int, int] = QUADRATURE_CELLS,
    order: int = QUADRATURE_ORDER,
) -> float:
    """
    Area int int sqrt(det g) dx dy by tensor-product Gauss-Legendre quadrature.

    Args:
        map: Immersion
        region: Integration rectangle inside the domain; the whole domain when omitted
        cells: Cells per axis
        order: Gauss-Legendre points per cell and axis

    Returns:
        Area
    """
    region = region or map.domain
    if not map.domain.contains_rectangle(region):
        raise BadParameter(f"region {region.as_tuple()} leaves the domain {map.domain.as_tuple()}")
    signature = map.ambient.signature

    def area_element(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        components = eval_jet(map, (xs, ys), 1)
        t1 = HermitianVector(tuple(c.diff(0) for c in components), signature)
        t2 = HermitianVector(tuple(c.diff(1) for c in components), signature)
        g11 = np.real(tj.value_of(metric_pairing(t1, t1)))
        g12 = np.real(tj.value_of(metric_pairing(t1, t2)))
        g22 = np.real(tj.value_of(metric_pairing(t2, t2)))
        return np.sqrt(np.maximum(g11 * g22 - g12 * g12, 0.0))

    return integrate_rectangle(area_element, region.as_tuple(), cells, order)


@dataclass(frozen=True)
class VariationResult:
    """
    First variation of area along one bump.

    area_plus and area_minus are the areas of F_h and F_-h at the coarse step;
    lagrangian_defect is the larger sup |omega| of the two over the bump support.
    """

    bump: BumpFunction
    h: float
    value: float
    area_plus: float
    area_minus: float
    lagrangian_defect: float


def _central_difference(
    map: ImmersionMap, f: BumpFunction, h: float, region: Rectangle, cells: Tuple[int, int]
) -> Tuple[float, float, float]:
    plus = area(hamiltonian_deform(map, f, h), region, cells)
    minus = area(hamiltonian_deform(map, f, -h), region, cells)
    return (plus - minus) / (2.0 * h), plus, minus


def first_variation(
    map: ImmersionMap,
    f: BumpFunction,
    h: float = 1e-3,
    cells: Tuple[int, int] = QUADRATURE_CELLS,
) -> VariationResult:
    """
    d/dt area(F_t) at t = 0, central difference Richardson-extrapolated from
    steps h and h/2 over the bump's support box.

    Raises:
        BadParameter: h outside [1e-5, 1e-2] or bump support leaving the domain
        Unsupported: non-flat ambient
    """
    _require_flat(map)
    if not STEP_RANGE[0] <= h <= STEP_RANGE[1]:
        raise BadParameter(f"variation step {h} outside [{STEP_RANGE[0]:g}, {STEP_RANGE[1]:g}]")
    region = f.support
    coarse, plus, minus = _central_difference(map, f, h, region, cells)
    fine, _, _ = _central_difference(map, f, h / 2.0, region, cells)
    value = (4.0 * fine - coarse) / 3.0
    defect = max(lagrangian_defect(hamiltonian_deform(map, f, s), region) for s in (h, -h))
    logger.debug("first variation of %s along bump at %s: %.3e (defect %.1e)", map.name, f.center, value, defect)
    return VariationResult(
        bump=f, h=h, value=value, area_plus=plus, area_minus=minus, lagrangian_defect=defect
    )


def seeded_bumps(
    domain: Rectangle,
    n: int,
    seed: int,
    radius_fraction: Tuple[float, float] = (0.1, 0.25),
    amplitude: Tuple[float, float] = (0.1, 1.0),
) -> List[BumpFunction]:
    """
    Reproducible random bumps with supports strictly inside the domain.

    Args:
        domain: Parameter rectangle
        n: Number of bumps
        seed: Seed for numpy's default_rng
        radius_fraction: Radius range as a fraction of the shorter domain side
        amplitude: Amplitude range

    Returns:
        List of bumps
    """
    if n < 1:
        raise BadParameter(f"number of bumps must be positive, got {n}")
    rng = np.random.default_rng(seed)
    side = min(domain.width, domain.height)
    bumps = []
    for _ in range(n):
        radius = float(rng.uniform(*radius_fraction)) * side
        margin = 1.05 * radius
        cx = float(rng.uniform(domain.x0 + margin, domain.x1 - margin))
        cy = float(rng.uniform(domain.y0 + margin, domain.y1 - margin))
        bumps.append(BumpFunction((cx, cy), radius, float(rng.uniform(*amplitude))))
    return bumps


def lagrangian_defect(
    map: ImmersionMap, region: Optional[Rectangle] = None, grid: Tuple[int, int] = (21, 21)
) -> float:
    """sup |omega(d_1 F, d_2 F)| over a grid of the region (default: the domain)."""
    xs, ys = (region or map.domain).grid(*grid)
    xs, ys = np.meshgrid(xs, ys, indexing="ij")
    components = eval_jet(map, (xs, ys), 1)
    signature = map.ambient.signature
    t1 = HermitianVector(tuple(c.diff(0) for c in components), signature)
    t2 = HermitianVector(tuple(c.diff(1) for c in components), signature)
    return float(np.max(np.abs(tj.value_of(symplectic_form(t1, t2)))))
