"""
Immersion maps and their jet evaluation.
Infrastructure Layer - Geometry Package
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Callable, Optional, Tuple

import numpy as np

from infrastructure.errors import BadParameter, ContractViolation, OutOfDomain, Unsupported
from infrastructure.geometry.ambient import AmbientSpace, HermitianVector
from infrastructure.numerics.finite_differences import richardson_partial
from infrastructure.numerics.taylor_jet import TaylorJet

logger = logging.getLogger(__name__)

MAX_EVAL_ORDER = 3
DOMAIN_SLACK = 1e-12

# (x, y) -> lift_dim complex components; must accept floats, arrays and jets
Evaluator = Callable[[Any, Any], Tuple[Any, ...]]


@dataclass(frozen=True)
class Rectangle:
    """Closed parameter rectangle [x0, x1] x [y0, y1]."""

    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise BadParameter(
                f"empty domain [{self.x0}, {self.x1}] x [{self.y0}, {self.y1}]"
            )

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.x0, self.x1, self.y0, self.y1)

    def contains_rectangle(self, other: "Rectangle", strict: bool = False) -> bool:
        if strict:
            return self.x0 < other.x0 and other.x1 < self.x1 and self.y0 < other.y0 and other.y1 < self.y1
        return self.x0 <= other.x0 and other.x1 <= self.x1 and self.y0 <= other.y0 and other.y1 <= self.y1

    def grid(self, nx: int, ny: int) -> Tuple[np.ndarray, np.ndarray]:
        """Node coordinates of an nx x ny grid including the edges."""
        return np.linspace(self.x0, self.x1, nx), np.linspace(self.y0, self.y1, ny)


@dataclass(frozen=True, eq=False)
class ImmersionMap:
    """
    Parametrized surface in flat C^2 or a horizontal lift into S^5 / H^5_1.

    Args:
        name: Identifier used in reports
        ambient: Target ambient space
        evaluator: Component formulas
        domain: Sampling rectangle
        periods: Exact period per axis, None when the axis is not periodic
    """

    name: str
    ambient: AmbientSpace
    evaluator: Evaluator
    domain: Rectangle
    periods: Tuple[Optional[float], Optional[float]] = (None, None)

    @property
    def periodic(self) -> Tuple[bool, bool]:
        return (self.periods[0] is not None, self.periods[1] is not None)

    def with_domain(self, domain: Rectangle) -> "ImmersionMap":
        return replace(self, domain=domain)

    def evaluate(self, x: Any, y: Any) -> Tuple[Any, ...]:
        """Raw component formulas, no domain handling."""
        components = tuple(self.evaluator(x, y))
        if len(components) != self.ambient.lift_dim:
            raise ContractViolation(
                f"{self.name} returned {len(components)} components, expected {self.ambient.lift_dim}"
            )
        return components

    def wrap(self, xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Fold points on periodic axes back into the domain.

        Raises:
            OutOfDomain: a point leaves a non-periodic axis
        """
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        wrapped = []
        bounds = ((self.domain.x0, self.domain.x1), (self.domain.y0, self.domain.y1))
        for axis, (values, (lo, hi), period) in enumerate(zip((xs, ys), bounds, self.periods)):
            slack = DOMAIN_SLACK * max(1.0, abs(lo), abs(hi))
            outside = (values < lo - slack) | (values > hi + slack)
            if np.any(outside):
                if period is None:
                    bad = float(np.asarray(values)[outside].flat[0])
                    raise OutOfDomain(
                        f"{'xy'[axis]}={bad:.6g} outside [{lo:.6g}, {hi:.6g}] for {self.name}"
                    )
                values = np.where(outside, lo + np.mod(values - lo, period), values)
            wrapped.append(values)
        return wrapped[0], wrapped[1]


def eval_jet(map: ImmersionMap, p: Tuple[Any, Any], order: int) -> Tuple[TaylorJet, ...]:
    """
    Taylor jets of every lift component at the point(s) p.

    Args:
        map: Immersion
        p: (x, y), floats or arrays of equal shape
        order: Jet order, at most 3

    Returns:
        One TaylorJet per component
    """
    if order > MAX_EVAL_ORDER:
        raise Unsupported(f"jet order {order} exceeds the supported maximum {MAX_EVAL_ORDER}")
    if order < 0:
        raise BadParameter(f"jet order must be non-negative, got {order}")
    xs, ys = map.wrap(*p)
    return _evaluate_seeds(map, xs, ys, order)


def _evaluate_seeds(map: ImmersionMap, xs: np.ndarray, ys: np.ndarray, order: int) -> Tuple[TaylorJet, ...]:
    xs, ys = np.broadcast_arrays(xs, ys)
    x = TaylorJet.variable(xs, axis=0, order=order)
    y = TaylorJet.variable(ys, axis=1, order=order)
    components = []
    for component in map.evaluate(x, y):
        if not isinstance(component, TaylorJet):
            component = TaylorJet.constant(np.broadcast_to(np.asarray(component, dtype=complex), xs.shape), order)
        components.append(component)
    return tuple(components)


@dataclass(frozen=True, eq=False)
class LiftJets:
    """
    Jets of a lift and of its partial derivatives at a batch of samples.

    lift has the requested order k, tangents order k-1 and hessian order k-2.
    """

    ambient: AmbientSpace
    xs: np.ndarray
    ys: np.ndarray
    lift: HermitianVector
    tangents: Tuple[HermitianVector, HermitianVector]
    hessian: Tuple[Tuple[HermitianVector, HermitianVector], Tuple[HermitianVector, HermitianVector]]

    @property
    def points(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.xs, self.ys


def lift_jets(map: ImmersionMap, xs: Any, ys: Any, order: int = 3) -> LiftJets:
    """
    Evaluate a map as HermitianVectors of jets together with its first and
    second partials.
    """
    if order < 2:
        raise BadParameter(f"lift jets need order >= 2, got {order}")
    components = eval_jet(map, (xs, ys), order)
    signature = map.ambient.signature
    lift = HermitianVector(components, signature)
    d1, d2 = lift.diff(0), lift.diff(1)
    hessian = ((d1.diff(0), d1.diff(1)), (d2.diff(0), d2.diff(1)))
    xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))
    return LiftJets(map.ambient, xs, ys, lift, (d1, d2), hessian)


def _scalar_component(map: ImmersionMap, index: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    def component(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        values = map.evaluate(xs, ys)[index]
        return np.broadcast_to(np.asarray(values, dtype=complex), np.shape(xs))

    return component


def fd_crosscheck(map: ImmersionMap, p: Tuple[float, float], order: int, h: float) -> float:
    """
    Largest deviation between jet partials and Richardson-extrapolated central
    differences, over every component and every partial of total degree 1..order.
    """
    if not 1e-6 <= h <= 1e-2:
        raise BadParameter(f"finite-difference step {h} outside [1e-6, 1e-2]")
    jets = eval_jet(map, p, order)
    x, y = (float(np.asarray(v)) for v in map.wrap(*p))
    worst = 0.0
    for index, jet in enumerate(jets):
        component = _scalar_component(map, index)
        for total in range(1, order + 1):
            for nx in range(total + 1):
                ny = total - nx
                estimate = richardson_partial(component, x, y, nx, ny, h)
                deviation = abs(complex(jet.partial(nx, ny)) - estimate)
                worst = max(worst, deviation)
    logger.debug("fd_crosscheck %s at %s order %d h=%g: %.3e", map.name, p, order, h, worst)
    return worst
