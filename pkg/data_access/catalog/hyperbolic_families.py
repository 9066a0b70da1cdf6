"""
Flat Hamiltonian stationary Lagrangian surfaces of CH^2(-4), as horizontal lifts
into the anti-de Sitter quadric H^5_1 = {z in C^3_1 : herm(z, z) = -1}.
Data Access Layer - Catalog Package

Families 5 and 6 carry polynomial prefactors in (x, y) and are unbounded; the
sampling window stays at [-pi, pi]^2 and the quadric residual guards them.
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

SQUARE = Rectangle(-pi, pi, -pi, pi)


def _expected(params):
    return ExpectedProperties(PARALLEL_FLAT_FAMILY)


def _family1(params):
    a, b = params["a"], params["b"]
    s = sqrt(1.0 - a * a)
    m = sqrt(1.0 - a * a - b * b)

    def evaluate(x, y):
        phase = tj.exp(1j * (a * x + b * y))
        sinh_my = tj.sinh(m * y)
        return (
            phase * (tj.cosh(m * y) - (1j * b / m) * sinh_my) / s,
            phase * sinh_my / m,
            a * tj.exp(1j * x / a) / s,
        )

    return evaluate


def _family2(params):
    b = params["b"]
    q = sqrt(1.0 - b * b)

    def evaluate(x, y):
        phase = tj.exp(1j * (q * x + b * y))
        return (
            (1j / b + y) * phase,
            y * phase,
            (q / b) * tj.exp(1j * x / q),
        )

    return evaluate


def _family3(params):
    a, b = params["a"], params["b"]
    s = sqrt(1.0 - a * a)
    m = sqrt(a * a + b * b - 1.0)

    def evaluate(x, y):
        phase = tj.exp(1j * (a * x + b * y))
        sin_my = tj.sin(m * y)
        return (
            phase * (tj.cos(m * y) - (1j * b / m) * sin_my) / s,
            phase * sin_my / m,
            a * tj.exp(1j * x / a) / s,
        )

    return evaluate


def _family4(params):
    a, b = params["a"], params["b"]
    s = sqrt(a * a - 1.0)
    m = sqrt(a * a + b * b - 1.0)

    def evaluate(x, y):
        phase = tj.exp(1j * (a * x + b * y))
        sin_my = tj.sin(m * y)
        return (
            a * tj.exp(1j * x / a) / s,
            phase * sin_my / m,
            phase * (tj.cos(m * y) - (1j * b / m) * sin_my) / s,
        )

    return evaluate


def _family5(params):
    b = params["b"]
    scale = 1.0 / (8.0 * b * b)

    def evaluate(x, y):
        phase = tj.exp(1j * x)
        common = 1j + 8.0 * b * b * x - 4.0 * b * y
        return (
            phase * scale * (common + 8.0j * b * b),
            phase * scale * common,
            tj.exp(1j * (x + 2.0 * b * y)) / (2.0 * b),
        )

    return evaluate


def _family6(params):
    def evaluate(x, y):
        phase = tj.exp(1j * x)
        half_y_sq = 0.5 * (y * y)
        return (
            phase * (1.0 + half_y_sq - 1j * x),
            phase * y,
            phase * (half_y_sq - 1j * x),
        )

    return evaluate


def _template(index, parameters, constraints, formula, description):
    return FamilyTemplate(
        id=f"ch2-family{index}",
        ambient=AmbientSpace.hyp_ch2(),
        parameters=parameters,
        constraints=constraints,
        formula=formula,
        expected=_expected,
        domain=lambda p: SQUARE,
        description=description,
        acceptance_params=({spec.name: spec.default for spec in parameters},),
    )


A = "real constant a"
B = "real constant b"

FAMILY1 = _template(
    1,
    (ParameterSpec("a", 0.5, A), ParameterSpec("b", 0.5, B)),
    (
        Constraint("a≠0", lambda p: abs(p["a"]), "a ≠ 0 and a² + b² < 1"),
        Constraint("a²+b²<1", lambda p: 1.0 - p["a"] ** 2 - p["b"] ** 2, "a ≠ 0 and a² + b² < 1"),
    ),
    _family1,
    "hyperbolic-in-y factor, frequency sqrt(1 - a² - b²)",
)

FAMILY2 = _template(
    2,
    (ParameterSpec("b", 0.5, B),),
    (Constraint("0<b²<1", lambda p: min(p["b"] ** 2, 1.0 - p["b"] ** 2), "0 < b² < 1"),),
    _family2,
    "linear-in-y prefactor (i/b + y)",
)

FAMILY3 = _template(
    3,
    (ParameterSpec("a", 0.9, A), ParameterSpec("b", 0.9, B)),
    (
        Constraint("0<a²<1", lambda p: min(p["a"] ** 2, 1.0 - p["a"] ** 2), "0 < a² < 1 and a² + b² > 1"),
        Constraint("a²+b²>1", lambda p: p["a"] ** 2 + p["b"] ** 2 - 1.0, "0 < a² < 1 and a² + b² > 1"),
    ),
    _family3,
    "trigonometric-in-y factor, frequency sqrt(a² + b² - 1)",
)

FAMILY4 = _template(
    4,
    (ParameterSpec("a", 2.0, A), ParameterSpec("b", 0.5, B)),
    (Constraint("a²>1", lambda p: p["a"] ** 2 - 1.0, "a² > 1"),),
    _family4,
    "timelike first coordinate a e^{ix/a} / sqrt(a² - 1)",
)

FAMILY5 = _template(
    5,
    (ParameterSpec("b", 0.5, B),),
    (Constraint("b≠0", lambda p: abs(p["b"]), "b ≠ 0"),),
    _family5,
    "affine prefactor (i + 8b²x - 4by) / 8b²",
)

FAMILY6 = _template(
    6,
    (),
    (),
    _family6,
    "parameter-free, quadratic prefactor 1 + y²/2 - ix",
)

HYPERBOLIC_TEMPLATES = (FAMILY1, FAMILY2, FAMILY3, FAMILY4, FAMILY5, FAMILY6)
