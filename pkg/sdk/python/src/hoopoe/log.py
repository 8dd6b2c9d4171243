"""
Hoopoe SDK - Logging Setup

Handlers are installed only by entry points (CLI, MCP server); library
modules just call logging.getLogger(__name__).
"""

import logging
import sys
from typing import Optional, TextIO, Union

try:
    from pythonjsonlogger.json import JsonFormatter
except ImportError:  # python-json-logger < 3
    from pythonjsonlogger.jsonlogger import JsonFormatter

TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'

_HANDLER_NAME = "hoopoe"


def configure_logging(level: Union[int, str] = logging.INFO,
                      json_format: bool = False,
                      stream: Optional[TextIO] = None) -> logging.Logger:
    """
    Attach one handler to the `hoopoe` logger.

    Args:
        level: Logging level name or number
        json_format: Emit one JSON object per record
        stream: Target stream (stderr by default; stdout is left to the program output)

    Returns:
        The configured package logger
    """
    if isinstance(level, str):
        name = level
        level = logging.getLevelName(name.upper())
        if not isinstance(level, int):
            raise ValueError(f"Unknown log level: {name}")

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.set_name(_HANDLER_NAME)
    if json_format:
        handler.setFormatter(JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))

    logger = logging.getLogger("hoopoe")
    for existing in list(logger.handlers):
        if existing.get_name() == _HANDLER_NAME:
            logger.removeHandler(existing)
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger
