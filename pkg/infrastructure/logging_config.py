"""
Logging setup for command-line runs.
Infrastructure Layer - Logging Package
"""

import logging
import sys
from typing import Optional, Union

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_handler: Optional[logging.Handler] = None


def configure_logging(level: Union[str, int] = "WARNING") -> None:
    """
    Install a single stderr handler on the root logger.

    Calling it again only changes the level.

    Args:
        level: Logging level name or number
    """
    global _handler

    if isinstance(level, str):
        level = level.upper()

    root = logging.getLogger()
    if _handler is None:
        _handler = logging.StreamHandler(sys.stderr)
        _handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(_handler)
    root.setLevel(level)
