"""
TOML run configuration and flag parsing helpers.
Presentation Layer - CLI Package

A config file mirrors the command-line flags:

    entry = "cp2-flat"
    grid = "41x41"
    domain = "-3.14:3.14:-3.14:3.14"
    profile = "strict"
    out = "reports/cp2.json"
    seed = 42
    [params]
    a = 1.0
    b = 0.5
"""

import math
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - Python 3.10 fallback (same API)
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from infrastructure.errors import BadParameter

MAX_RANGE_VALUES = 1000


def load_config(path: Optional[Union[str, Path]]) -> Dict[str, Any]:
    """
    Read a TOML config file; no path means an empty config.

    Raises:
        BadParameter: missing or malformed file
    """
    if path is None:
        return {}
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except FileNotFoundError:
        raise BadParameter(f"config file {path} not found") from None
    except tomllib.TOMLDecodeError as e:
        raise BadParameter(f"config file {path} is not valid TOML: {e}") from None


def _number(text: str, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise BadParameter(f"{what}: '{text}' is not a number") from None
    if not math.isfinite(value):
        raise BadParameter(f"{what}: '{text}' is not finite")
    return value


def parse_grid(value: Union[str, Sequence[int], int]) -> Tuple[int, int]:
    """'41x41', 41 or [41, 41] -> (41, 41)."""
    if isinstance(value, int):
        return (value, value)
    if isinstance(value, str):
        parts = value.lower().split("x")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise BadParameter(f"grid '{value}' is not of the form NxM")
        return (int(parts[0]), int(parts[1]))
    values = list(value)
    if len(values) != 2:
        raise BadParameter(f"grid {values} needs two sizes")
    return (int(values[0]), int(values[1]))


def parse_domain(value: Union[str, Sequence[float], None]) -> Optional[Tuple[float, float, float, float]]:
    """'x0:x1:y0:y1' -> (x0, x1, y0, y1)."""
    if value is None:
        return None
    parts = value.split(":") if isinstance(value, str) else list(value)
    if len(parts) != 4:
        raise BadParameter(f"domain '{value}' is not of the form x0:x1:y0:y1")
    x0, x1, y0, y1 = (_number(str(p), "domain") for p in parts)
    return (x0, x1, y0, y1)


def parse_assignments(items: Optional[Sequence[str]]) -> Dict[str, str]:
    """['a=1', 'b=0.5'] -> {'a': '1', 'b': '0.5'}; later items win."""
    result: Dict[str, str] = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise BadParameter(f"parameter '{item}' is not of the form name=value")
        result[name.strip()] = value.strip()
    return result


def parse_params(items: Optional[Sequence[str]]) -> Dict[str, float]:
    return {name: _number(value, f"parameter {name}") for name, value in parse_assignments(items).items()}


def parse_range(text: str, name: str = "range") -> List[float]:
    """
    'start:stop:step' -> inclusive list of values; a plain number is a single value.

    Raises:
        BadParameter: malformed range, zero step, a step pointing away from stop
            or more than MAX_RANGE_VALUES values
    """
    parts = text.split(":")
    if len(parts) == 1:
        return [_number(parts[0], name)]
    if len(parts) != 3:
        raise BadParameter(f"{name}: '{text}' is not of the form start:stop:step")
    start, stop, step = (_number(p, name) for p in parts)
    if step == 0:
        raise BadParameter(f"{name}: step must be nonzero in '{text}'")
    if (stop - start) * step < 0:
        raise BadParameter(f"{name}: step {step:g} never reaches {stop:g} from {start:g}")
    steps = (stop - start) / step
    if not math.isfinite(steps) or math.floor(steps + 1e-9) + 1 > MAX_RANGE_VALUES:
        raise BadParameter(f"{name}: '{text}' expands to more than {MAX_RANGE_VALUES} values")
    count = int(math.floor(steps + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def merge(flag: Any, config: Dict[str, Any], key: str, fallback: Any) -> Any:
    """Flag beats config file beats fallback (environment or built-in default)."""
    if flag is not None:
        return flag
    if key in config:
        return config[key]
    return fallback
