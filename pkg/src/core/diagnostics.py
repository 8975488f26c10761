"""
Diagnostics for svdc
Logging setup: "[component] message" lines on standard error
"""

import logging
import sys
from typing import Optional

from config.settings import LOG_CONFIG

_HANDLER_NAME = "svdc-stderr"


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Install a single stderr handler on the root logger.
    Standard output stays reserved for reports and CSV.
    """
    root = logging.getLogger()
    level_name = (level or LOG_CONFIG["level"]).upper()
    root.setLevel(getattr(logging, level_name, logging.WARNING))

    for handler in root.handlers:
        if handler.get_name() == _HANDLER_NAME:
            return root

    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter(LOG_CONFIG["format"]))
    root.addHandler(handler)
    return root
