"""
Catalog entity types.
Data Access Layer - Catalog Package
"""

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, FrozenSet, Mapping, Optional, Tuple

from infrastructure.geometry.ambient import AmbientSpace
from infrastructure.geometry.immersion import Evaluator, ImmersionMap, Rectangle

CONSTRAINT_MARGIN = 1e-6
NEAR_DEGENERATE_MARGIN = 1e-3

Params = Mapping[str, float]

FLAG_LAGRANGIAN = "lagrangian"
FLAG_HAMILTONIAN_STATIONARY = "hamiltonian_stationary"
FLAG_PARALLEL_H = "parallel_H"
FLAG_PARALLEL_A = "parallel_A"
FLAG_FLAT = "flat"
FLAG_MINIMAL = "minimal"

PARALLEL_FLAT_FAMILY = frozenset(
    {FLAG_LAGRANGIAN, FLAG_HAMILTONIAN_STATIONARY, FLAG_PARALLEL_H, FLAG_PARALLEL_A, FLAG_FLAT}
)


@dataclass(frozen=True)
class ParameterSpec:
    """Named real parameter of a family."""

    name: str
    default: float
    description: str = ""


@dataclass(frozen=True)
class Constraint:
    """
    Parameter constraint of a family.

    Args:
        clause: Compact clause text, e.g. "a²+b²<1"
        slack: Positive exactly when the clause holds; compared with the margin
        source: Wording of the theorem the clause comes from
    """

    clause: str
    slack: Callable[[Params], float]
    source: str = ""

    def holds(self, params: Params, margin: float = CONSTRAINT_MARGIN) -> bool:
        return self.slack(params) > margin


@dataclass(frozen=True)
class ExpectedProperties:
    """Property flags an entry must satisfy, plus closed-form |H| when known."""

    flags: FrozenSet[str]
    closed_form_abs_H: Optional[float] = None

    def __contains__(self, flag: str) -> bool:
        return flag in self.flags


@dataclass(frozen=True)
class FamilyTemplate:
    """
    Recipe for a catalog entry; parameters are bound by the repository.

    Args:
        id: Public entry id (CLI contract)
        ambient: Target ambient space
        parameters: Parameter schema with defaults
        constraints: Clauses checked in order
        formula: params -> component evaluator
        expected: params -> expected properties
        domain: params -> default sampling rectangle
        periods: params -> exact period per axis (None if not periodic)
        description: One-line summary
        control: True for non-family control surfaces
        acceptance_params: Parameter sets used by the acceptance suite
    """

    id: str
    ambient: AmbientSpace
    parameters: Tuple[ParameterSpec, ...]
    constraints: Tuple[Constraint, ...]
    formula: Callable[[Params], Evaluator]
    expected: Callable[[Params], ExpectedProperties]
    domain: Callable[[Params], Rectangle]
    periods: Callable[[Params], Tuple[Optional[float], Optional[float]]] = lambda p: (None, None)
    description: str = ""
    control: bool = False
    acceptance_params: Tuple[Dict[str, float], ...] = field(default_factory=tuple)

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return tuple(spec.name for spec in self.parameters)

    def defaults(self) -> Dict[str, float]:
        return {spec.name: spec.default for spec in self.parameters}

    def schema_line(self) -> str:
        """Compact listing line, e.g. 'ch2-family1: a≠0, a²+b²<1'."""
        if self.constraints:
            clauses = ", ".join(c.clause for c in self.constraints)
        elif self.parameters:
            clauses = ", ".join(f"{name} real" for name in self.parameter_names)
        else:
            clauses = "no parameters"
        return f"{self.id}: {clauses}"


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A family instance with bound parameters."""

    id: str
    ambient: AmbientSpace
    params: Dict[str, float]
    param_schema: Tuple[ParameterSpec, ...]
    constraints: Tuple[Constraint, ...]
    immersion: ImmersionMap
    expected: ExpectedProperties
    default_domain: Rectangle
    near_degenerate: bool = False
    control: bool = False

    @property
    def periodicity(self) -> Tuple[bool, bool]:
        return self.immersion.periodic

    def with_domain(self, domain: Rectangle) -> "CatalogEntry":
        return replace(self, immersion=self.immersion.with_domain(domain))
