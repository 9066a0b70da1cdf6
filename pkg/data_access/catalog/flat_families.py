"""
Hamiltonian stationary Lagrangian surfaces of flat C^2, plus the control graph.
Data Access Layer - Catalog Package

Plane, cylinder and torus are arc-length parametrized, so the induced metric is
the identity. The control surface is the Lagrangian graph of the potential
u = k x^3 y, which is Lagrangian but not Hamiltonian stationary.
"""

from math import pi, sqrt

from data_access.catalog.entry import (
    FLAG_LAGRANGIAN,
    FLAG_MINIMAL,
    PARALLEL_FLAT_FAMILY,
    Constraint,
    ExpectedProperties,
    FamilyTemplate,
    ParameterSpec,
)
from infrastructure.geometry.ambient import AmbientSpace
from infrastructure.geometry.immersion import Rectangle
from infrastructure.numerics import taylor_jet as tj

FLAT_SOURCE = "flat C^2 classification: a Lagrangian plane, a circle times a line, or two circles"

SQUARE = Rectangle(-pi, pi, -pi, pi)


def _plane(params):
    def evaluate(x, y):
        return (x, y)

    return evaluate


def _cylinder(params):
    r = params["r"]

    def evaluate(x, y):
        return (r * tj.exp(1j * x / r), y)

    return evaluate


def _torus(params):
    r1, r2 = params["r1"], params["r2"]

    def evaluate(x, y):
        return (r1 * tj.exp(1j * x / r1), r2 * tj.exp(1j * y / r2))

    return evaluate


def _control_graph(params):
    k = params["k"]

    # F = (x + i u_x, y + i u_y) with u = k x^3 y
    def evaluate(x, y):
        return (x + 3j * k * (x * x * y), y + 1j * k * (x * x * x))

    return evaluate


PLANE = FamilyTemplate(
    id="c2-plane",
    ambient=AmbientSpace.flat_c2(),
    parameters=(),
    constraints=(),
    formula=_plane,
    expected=lambda p: ExpectedProperties(PARALLEL_FLAT_FAMILY | {FLAG_MINIMAL}, 0.0),
    domain=lambda p: SQUARE,
    description="Lagrangian plane (x, y) -> (x, y)",
    acceptance_params=({},),
)

CYLINDER = FamilyTemplate(
    id="c2-cylinder",
    ambient=AmbientSpace.flat_c2(),
    parameters=(ParameterSpec("r", 1.0, "circle radius"),),
    constraints=(Constraint("r>0", lambda p: p["r"], FLAT_SOURCE),),
    formula=_cylinder,
    expected=lambda p: ExpectedProperties(PARALLEL_FLAT_FAMILY, 1.0 / p["r"]),
    domain=lambda p: Rectangle(-pi * p["r"], pi * p["r"], -pi, pi),
    periods=lambda p: (2.0 * pi * p["r"], None),
    description="circle times line (r e^{ix/r}, y)",
    acceptance_params=({"r": 0.5}, {"r": 1.0}, {"r": 2.0}),
)

TORUS = FamilyTemplate(
    id="c2-torus",
    ambient=AmbientSpace.flat_c2(),
    parameters=(
        ParameterSpec("r1", 1.0, "first circle radius"),
        ParameterSpec("r2", 2.0, "second circle radius"),
    ),
    constraints=(
        Constraint("r1>0", lambda p: p["r1"], FLAT_SOURCE),
        Constraint("r2>0", lambda p: p["r2"], FLAT_SOURCE),
    ),
    formula=_torus,
    expected=lambda p: ExpectedProperties(
        PARALLEL_FLAT_FAMILY, sqrt(1.0 / p["r1"] ** 2 + 1.0 / p["r2"] ** 2)
    ),
    domain=lambda p: Rectangle(-pi * p["r1"], pi * p["r1"], -pi * p["r2"], pi * p["r2"]),
    periods=lambda p: (2.0 * pi * p["r1"], 2.0 * pi * p["r2"]),
    description="product of circles (r1 e^{ix/r1}, r2 e^{iy/r2})",
    acceptance_params=({"r1": 1.0, "r2": 1.0}, {"r1": 1.0, "r2": 3.0}),
)

CONTROL_GRAPH = FamilyTemplate(
    id="control-graph",
    ambient=AmbientSpace.flat_c2(),
    parameters=(ParameterSpec("k", 0.3, "coefficient of the potential u = k x^3 y"),),
    constraints=(),
    formula=_control_graph,
    expected=lambda p: ExpectedProperties(frozenset({FLAG_LAGRANGIAN})),
    domain=lambda p: Rectangle(-1.5, 1.5, -1.5, 1.5),
    description="Lagrangian graph of u = k x^3 y (not Hamiltonian stationary)",
    control=True,
)

FLAT_TEMPLATES = (PLANE, CYLINDER, TORUS)
