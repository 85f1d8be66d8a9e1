"""
Logging setup for the command-line front end
"""
import logging
import sys
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "sparql2gremlin"


def configure_logging(level: str = "WARNING", colorize: bool = True,
                      stream: Optional[object] = None) -> logging.Logger:
    """Install a single stderr handler on the package logger"""
    logger = logging.getLogger("sparql2gremlin")
    for existing in list(logger.handlers):
        if existing.get_name() == _HANDLER_NAME:
            logger.removeHandler(existing)

    stream = stream or sys.stderr
    if colorize:
        handler: logging.Handler = RichHandler(
            console=Console(file=stream),
            show_path=False,
            rich_tracebacks=False,
        )
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    else:
        handler = logging.StreamHandler(stream)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler.set_name(_HANDLER_NAME)

    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False
    return logger
