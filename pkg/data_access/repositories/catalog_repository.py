"""
Catalog repository: family templates and validated entry construction.
Data Access Layer - Repository Package
"""

import logging
import math
from typing import Dict, List, Mapping, Optional

import numpy as np

from data_access.catalog.entry import (
    CONSTRAINT_MARGIN,
    NEAR_DEGENERATE_MARGIN,
    CatalogEntry,
    FamilyTemplate,
)
from data_access.catalog.flat_families import CONTROL_GRAPH, FLAT_TEMPLATES
from data_access.catalog.golden_values import verify_golden_values
from data_access.catalog.hyperbolic_families import HYPERBOLIC_TEMPLATES
from data_access.catalog.projective_families import PROJECTIVE_TEMPLATES
from data_access.repositories.base_repository import BaseRepository
from infrastructure.errors import BadLift, BadParameter, Unsupported
from infrastructure.geometry.ambient import BAD_LIFT_TOL, HermitianVector, lift_constraint_residual
from infrastructure.geometry.immersion import ImmersionMap

logger = logging.getLogger(__name__)

SAMPLE_CHECK_NODES = 10


class CatalogRepository(BaseRepository[FamilyTemplate]):
    """
    Repository for catalog templates.
    Builds CatalogEntry instances after validating parameters against the
    template's constraints.
    """

    def __init__(self):
        super().__init__(FLAT_TEMPLATES + PROJECTIVE_TEMPLATES + HYPERBOLIC_TEMPLATES + (CONTROL_GRAPH,))
        self._golden_checked = False

    def _ensure_golden(self) -> None:
        if not self._golden_checked:
            verify_golden_values({template.id: template for template in self.get_all()})
            self._golden_checked = True

    def list_catalog(self) -> List[FamilyTemplate]:
        """Family templates in listing order (controls excluded)."""
        self._ensure_golden()
        return self.find_by_criteria({"control": False})

    def list_controls(self) -> List[FamilyTemplate]:
        return self.find_by_criteria({"control": True})

    def get_template(self, entry_id: str) -> FamilyTemplate:
        template = self.get_by_id(entry_id)
        if template is None:
            known = ", ".join(t.id for t in self.get_all())
            raise BadParameter(f"unknown entry '{entry_id}' (known: {known})")
        return template

    def resolve_params(self, template: FamilyTemplate, params: Optional[Mapping[str, float]]) -> Dict[str, float]:
        """
        Merge user parameters over the template defaults.

        Raises:
            BadParameter: unknown parameter name or non-finite value
        """
        resolved = template.defaults()
        for name, value in (params or {}).items():
            if name not in resolved:
                expected = ", ".join(template.parameter_names) or "none"
                raise BadParameter(f"{template.id} has no parameter '{name}' (parameters: {expected})")
            try:
                number = float(value)
            except (TypeError, ValueError):
                raise BadParameter(f"parameter {name}={value!r} is not a number") from None
            if not math.isfinite(number):
                raise BadParameter(f"parameter {name}={value!r} is not finite")
            resolved[name] = number
        return resolved

    def validate(self, template: FamilyTemplate, params: Mapping[str, float]) -> None:
        """
        Check constraints in order; the first violated clause is reported.

        Raises:
            BadParameter: naming the violated clause
        """
        for constraint in template.constraints:
            if not constraint.holds(params, CONSTRAINT_MARGIN):
                raise BadParameter(
                    f"{template.id}: constraint {constraint.clause} violated by "
                    f"{_format_params(params)}; the family requires {constraint.source}",
                    clause=constraint.clause,
                )

    def is_near_degenerate(self, template: FamilyTemplate, params: Mapping[str, float]) -> bool:
        return any(c.slack(params) < NEAR_DEGENERATE_MARGIN for c in template.constraints)

    def build(self, entry_id: str, params: Optional[Mapping[str, float]] = None) -> CatalogEntry:
        """
        Build a catalog entry.

        Args:
            entry_id: Template id, e.g. "ch2-family3"
            params: Parameter overrides; missing ones take their defaults

        Returns:
            CatalogEntry whose lift passed the ambient constraint on a 10x10 sample

        Raises:
            BadParameter: unknown id or parameter, or a violated constraint
            BadLift: the built lift misses the sphere/quadric constraint
        """
        self._ensure_golden()
        template = self.get_template(entry_id)
        resolved = self.resolve_params(template, params)
        self.validate(template, resolved)

        domain = template.domain(resolved)
        immersion = ImmersionMap(
            name=template.id,
            ambient=template.ambient,
            evaluator=template.formula(resolved),
            domain=domain,
            periods=template.periods(resolved),
        )
        _check_lift_constraint(immersion)

        near_degenerate = self.is_near_degenerate(template, resolved)
        if near_degenerate:
            logger.warning(
                "%s %s is within %g of a constraint boundary",
                entry_id,
                _format_params(resolved),
                NEAR_DEGENERATE_MARGIN,
            )
        logger.debug("built %s with %s", entry_id, _format_params(resolved))
        return CatalogEntry(
            id=template.id,
            ambient=template.ambient,
            params=resolved,
            param_schema=template.parameters,
            constraints=template.constraints,
            immersion=immersion,
            expected=template.expected(resolved),
            default_domain=domain,
            near_degenerate=near_degenerate,
            control=template.control,
        )


def _format_params(params: Mapping[str, float]) -> str:
    if not params:
        return "no parameters"
    return ", ".join(f"{name}={value:g}" for name, value in params.items())


def _check_lift_constraint(immersion: ImmersionMap) -> None:
    ambient = immersion.ambient
    if not ambient.is_lifted:
        return
    xs, ys = immersion.domain.grid(SAMPLE_CHECK_NODES, SAMPLE_CHECK_NODES)
    xs, ys = np.meshgrid(xs, ys, indexing="ij")
    z = HermitianVector(immersion.evaluate(xs, ys), ambient.signature)
    residual = lift_constraint_residual(z, ambient)
    worst = int(np.argmax(residual))
    if residual.flat[worst] > BAD_LIFT_TOL:
        raise BadLift(
            f"{immersion.name} lift constraint residual {float(residual.flat[worst]):.3e}",
            (float(xs.flat[worst]), float(ys.flat[worst])),
        )


catalog_repository = CatalogRepository()


def build_c2(kind: str, r: Optional[float] = None, r1: Optional[float] = None, r2: Optional[float] = None) -> CatalogEntry:
    """
    Flat C^2 entry: kind is "plane", "cylinder" (radius r) or "torus" (r1, r2).

    Raises:
        Unsupported: unknown kind
        BadParameter: nonpositive radius
    """
    if kind not in ("plane", "cylinder", "torus"):
        raise Unsupported(f"no C^2 family '{kind}' (plane, cylinder, torus)")
    given = {"r": r, "r1": r1, "r2": r2}
    template = catalog_repository.get_template(f"c2-{kind}")
    params = {name: given[name] for name in template.parameter_names if given[name] is not None}
    return catalog_repository.build(template.id, params)


def build_cp2_flat(a: float, b: float = 0.0) -> CatalogEntry:
    """Flat torus of CP^2 for a != 0 and any b."""
    return catalog_repository.build("cp2-flat", {"a": a, "b": b})


def build_ch2_family(k: int, a: Optional[float] = None, b: Optional[float] = None) -> CatalogEntry:
    """
    CH^2 family k in 1..6; parameters a family does not use are ignored.

    Raises:
        Unsupported: k outside 1..6
        BadParameter: naming the violated clause
    """
    if not isinstance(k, int) or not 1 <= k <= 6:
        raise Unsupported(f"CH^2 family index {k} outside 1..6")
    template = catalog_repository.get_template(f"ch2-family{k}")
    given = {"a": a, "b": b}
    params = {name: given[name] for name in template.parameter_names if given[name] is not None}
    return catalog_repository.build(template.id, params)


def list_catalog() -> List[FamilyTemplate]:
    return catalog_repository.list_catalog()
