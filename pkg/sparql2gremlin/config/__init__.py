"""
Configuration for sparql2gremlin

This package provides:
- settings: Configuration management from env vars, .env files, and arguments
- logging: The stderr log handler used by the CLI
"""

from .logging import configure_logging
from .settings import (
    ConfigLoader,
    Sparql2GremlinConfig,
    get_default_config,
    get_global_config,
    load_config,
    set_global_config,
)

__all__ = [
    'Sparql2GremlinConfig',
    'ConfigLoader',
    'load_config',
    'get_default_config',
    'get_global_config',
    'set_global_config',
    'configure_logging',
]
