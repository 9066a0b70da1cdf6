"""
Flat Hamiltonian stationary Lagrangian tori of CP^2(4), as horizontal lifts into S^5.
Data Access Layer - Catalog Package
"""

from math import pi, sqrt

from data_access.catalog.entry import (
    PARALLEL_FLAT_FAMILY,
    Constraint,
    ExpectedProperties,
    FamilyTemplate,
    ParameterSpec,
)
from infrastructure.geometry.ambient import AmbientSpace
from infrastructure.geometry.immersion import Rectangle
from infrastructure.numerics import taylor_jet as tj

CP2_SOURCE = "for some real constants a ≠ 0 and b"


def _cp2_flat(params):
    a, b = params["a"], params["b"]
    s = sqrt(1.0 + a * a)
    q = sqrt(1.0 + a * a + b * b)

    def evaluate(x, y):
        phase = tj.exp(1j * (a * x + b * y))
        sin_qy = tj.sin(q * y)
        cos_qy = tj.cos(q * y)
        return (
            a * tj.exp(-1j * x / a) / s,
            phase * sin_qy / q,
            phase * (cos_qy - (1j * b / q) * sin_qy) / s,
        )

    return evaluate


CP2_FLAT = FamilyTemplate(
    id="cp2-flat",
    ambient=AmbientSpace.proj_cp2(),
    parameters=(ParameterSpec("a", 1.0, "nonzero real constant"), ParameterSpec("b", 0.0, "real constant")),
    constraints=(Constraint("a≠0", lambda p: abs(p["a"]), CP2_SOURCE),),
    formula=_cp2_flat,
    expected=lambda p: ExpectedProperties(PARALLEL_FLAT_FAMILY),
    domain=lambda p: Rectangle(-pi, pi, -pi, pi),
    description="flat torus family in CP^2 via the Hopf fibration S^5 -> CP^2",
    acceptance_params=({"a": 1.0, "b": 0.0}, {"a": 1.0, "b": 1.0}, {"a": 0.5, "b": -0.8}),
)

PROJECTIVE_TEMPLATES = (CP2_FLAT,)
