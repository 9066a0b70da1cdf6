"""
Golden values of the family formulas at fixed points.
Data Access Layer - Catalog Package

Values are stored as 20-digit decimal strings taken from closed forms
(exponentials at multiples of pi/2, hyperbolic functions at logarithms), so
they are independent of the formula code they guard.
"""

import logging
from typing import Dict, List, Tuple

import numpy as np

from data_access.catalog.entry import FamilyTemplate
from infrastructure.errors import ContractViolation

logger = logging.getLogger(__name__)

DRIFT_TOL = 1e-14

PI = "3.1415926535897932385"
HALF_PI = "1.5707963267948966192"
TWO_PI = "6.2831853071795864769"
FIVE_HALF_PI = "7.8539816339744830962"
R2 = "0.70710678118654752440"
SQRT3 = "1.7320508075688772935"
INV_SQRT3 = "0.57735026918962576451"
TWO_INV_SQRT3 = "1.1547005383792515290"
SQRT_TWO_THIRDS = "0.81649658092772603273"
LN2_OVER_08 = "0.86643397569993163677"
LN3_OVER_08 = "1.3732653608351371143"
COS1 = "0.54030230586813971740"
SIN1 = "0.84147098480789650665"

# (params, (x, y), components)
GoldenRow = Tuple[Dict[str, float], Tuple[str, str], Tuple[str, ...]]

GOLDEN_VALUES: Dict[str, List[GoldenRow]] = {
    "c2-plane": [
        ({}, ("0", "0"), ("0", "0")),
        ({}, ("0.5", "-1.25"), ("0.5", "-1.25")),
        ({}, ("-3", "2.75"), ("-3", "2.75")),
        ({}, ("1", "1"), ("1", "1")),
        ({}, ("-0.25", "3"), ("-0.25", "3")),
    ],
    "c2-cylinder": [
        ({"r": 2.0}, ("0", "0"), ("2", "0")),
        ({"r": 2.0}, (PI, "0.5"), ("2j", "0.5")),
        ({"r": 2.0}, ("-" + PI, "1"), ("-2j", "1")),
        ({"r": 2.0}, (TWO_PI, "-1"), ("-2", "-1")),
        ({"r": 2.0}, ("-" + TWO_PI, "2"), ("-2", "2")),
    ],
    "c2-torus": [
        ({"r1": 1.0, "r2": 2.0}, ("0", "0"), ("1", "2")),
        ({"r1": 1.0, "r2": 2.0}, (PI, PI), ("-1", "2j")),
        ({"r1": 1.0, "r2": 2.0}, (HALF_PI, "0"), ("1j", "2")),
        ({"r1": 1.0, "r2": 2.0}, ("0", "-" + PI), ("1", "-2j")),
        ({"r1": 1.0, "r2": 2.0}, ("-" + HALF_PI, PI), ("-1j", "2j")),
    ],
    "cp2-flat": [
        ({"a": 1.0, "b": 0.0}, ("0", "0"), (R2, "0", R2)),
        ({"a": 1.0, "b": 0.0}, (HALF_PI, "0"), (f"-{R2}j", "0", f"{R2}j")),
        ({"a": 1.0, "b": 0.0}, (PI, "0"), ("-" + R2, "0", "-" + R2)),
        ({"a": 1.0, "b": 0.0}, ("-" + HALF_PI, "0"), (f"{R2}j", "0", f"-{R2}j")),
        ({"a": 1.0, "b": 1.0}, ("0", "0"), (R2, "0", R2)),
        ({"a": 1.0, "b": 1.0}, (PI, "0"), ("-" + R2, "0", "-" + R2)),
    ],
    "ch2-family1": [
        ({"a": 0.6, "b": 0.0}, ("0", "0"), ("1.25", "0", "0.75")),
        ({"a": 0.6, "b": 0.0}, ("0", LN2_OVER_08), ("1.5625", "0.9375", "0.75")),
        ({"a": 0.6, "b": 0.0}, ("0", "-" + LN2_OVER_08), ("1.5625", "-0.9375", "0.75")),
        ({"a": 0.6, "b": 0.0}, ("0", LN3_OVER_08), ("2.0833333333333333333", "1.6666666666666666667", "0.75")),
        ({"a": 0.5, "b": 0.0}, (PI, "0"), (f"{TWO_INV_SQRT3}j", "0", INV_SQRT3)),
    ],
    "ch2-family2": [
        ({"b": 0.5}, ("0", "0"), ("2j", "0", SQRT3)),
        ({"b": 0.5}, ("0", PI), (f"-2+{PI}j", f"{PI}j", SQRT3)),
        ({"b": 0.5}, ("0", "-" + PI), (f"2+{PI}j", f"{PI}j", SQRT3)),
        ({"b": 0.5}, ("0", TWO_PI), (f"-{TWO_PI}-2j", "-" + TWO_PI, SQRT3)),
        ({"b": 0.5}, ("0", "-" + TWO_PI), (f"{TWO_PI}-2j", TWO_PI, SQRT3)),
    ],
    "ch2-family3": [
        ({"a": 0.6, "b": 1.0}, ("0", "0"), ("1.25", "0", "0.75")),
        ({"a": 0.6, "b": 1.0}, ("0", FIVE_HALF_PI), ("-2.0833333333333333333", "-1.6666666666666666667j", "0.75")),
        ({"a": 0.6, "b": 1.0}, ("0", "-" + FIVE_HALF_PI), ("-2.0833333333333333333", "-1.6666666666666666667j", "0.75")),
        ({"a": 0.5, "b": 1.0}, ("0", "0"), (TWO_INV_SQRT3, "0", INV_SQRT3)),
        ({"a": 0.5, "b": 1.0}, (PI, PI), ("-2.3094010767585030580", "-2j", INV_SQRT3)),
    ],
    "ch2-family4": [
        ({"a": 2.0, "b": 0.0}, ("0", "0"), (TWO_INV_SQRT3, "0", INV_SQRT3)),
        ({"a": 2.0, "b": 0.0}, (PI, "0"), (f"{TWO_INV_SQRT3}j", "0", INV_SQRT3)),
        ({"a": 2.0, "b": 0.0}, ("-" + PI, "0"), (f"-{TWO_INV_SQRT3}j", "0", INV_SQRT3)),
        ({"a": 2.0, "b": 0.0}, (HALF_PI, "0"), (f"{SQRT_TWO_THIRDS}+{SQRT_TWO_THIRDS}j", "0", "-" + INV_SQRT3)),
        ({"a": 2.0, "b": 0.0}, (TWO_PI, "0"), ("-" + TWO_INV_SQRT3, "0", INV_SQRT3)),
    ],
    "ch2-family5": [
        ({"b": 0.5}, ("0", "0"), ("1.5j", "0.5j", "1")),
        ({"b": 0.5}, ("0", "1"), ("-1+1.5j", "-1+0.5j", f"{COS1}+{SIN1}j")),
        ({"b": 0.5}, (PI, "0"), (f"-{PI}-1.5j", f"-{PI}-0.5j", "-1")),
        ({"b": 0.5}, ("0", "-1"), ("1+1.5j", "1+0.5j", f"{COS1}-{SIN1}j")),
        ({"b": 0.5}, (HALF_PI, "0"), (f"-1.5+{HALF_PI}j", f"-0.5+{HALF_PI}j", "1j")),
    ],
    "ch2-family6": [
        ({}, ("0", "0"), ("1", "0", "0")),
        ({}, ("0", "2"), ("3", "2", "2")),
        ({}, ("0", "-2"), ("3", "-2", "2")),
        ({}, (PI, "0"), (f"-1+{PI}j", "0", f"{PI}j")),
        ({}, (HALF_PI, "0"), (f"{HALF_PI}+1j", "0", HALF_PI)),
    ],
}


def verify_golden_values(templates: Dict[str, FamilyTemplate]) -> int:
    """
    Re-evaluate every golden row through the family formulas.

    Args:
        templates: Family templates keyed by id

    Returns:
        Number of rows checked

    Raises:
        ContractViolation: a formula drifted by more than 1e-14 from its golden value
    """
    checked = 0
    for entry_id, rows in GOLDEN_VALUES.items():
        template = templates[entry_id]
        for params, (x, y), expected in rows:
            evaluate = template.formula({**template.defaults(), **params})
            actual = np.asarray(evaluate(float(x), float(y)), dtype=complex)
            drift = float(np.max(np.abs(actual - np.array([complex(v) for v in expected]))))
            if drift > DRIFT_TOL:
                raise ContractViolation(
                    f"{entry_id} formula drifted by {drift:.3e} from its golden value at ({x}, {y})"
                )
            checked += 1
    logger.debug("verified %d golden values", checked)
    return checked
