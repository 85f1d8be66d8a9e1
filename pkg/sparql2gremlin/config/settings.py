"""
Configuration and settings management for sparql2gremlin

Configuration is loaded from these sources, later ones winning:
- Environment variables (``SPARQL2GREMLIN_`` prefix)
- A ``.env`` file
- CLI arguments and programmatic overrides
"""
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import load_dotenv

ENV_PREFIX = "SPARQL2GREMLIN_"

VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
EMIT_CHOICES = ("groovy", "bytecode", "both")
FORMAT_CHOICES = ("tsv", "table")


@dataclass
class Sparql2GremlinConfig:
    """Configuration class for sparql2gremlin"""

    # Fixtures (None means the bundled fixtures directory)
    fixtures_dir: Optional[str] = None

    # Output
    default_emit: str = "groovy"
    default_format: str = "tsv"

    # Fuzzing
    fuzz_count: int = 100
    fuzz_max_vertices: int = 8

    # UI preferences
    verbose: bool = False
    debug: bool = False
    colorize: bool = True
    log_level: str = "WARNING"

    # Internal settings
    _config_sources: list = field(default_factory=list)

    def __post_init__(self):
        """Validate configuration after initialization"""
        if self.log_level.upper() not in VALID_LOG_LEVELS:
            self.log_level = "WARNING"
        self.log_level = self.log_level.upper()

        if self.default_emit not in EMIT_CHOICES:
            self.default_emit = "groovy"
        if self.default_format not in FORMAT_CHOICES:
            self.default_format = "tsv"
        if self.fuzz_count < 1:
            self.fuzz_count = 100
        if self.fuzz_max_vertices < 1:
            self.fuzz_max_vertices = 8

    @property
    def effective_log_level(self) -> str:
        if self.debug:
            return "DEBUG"
        if self.verbose:
            return "INFO"
        return self.log_level


class ConfigLoader:
    """Loads configuration from various sources"""

    def __init__(self):
        self.config = Sparql2GremlinConfig()

    def load_from_env(self, prefix: str = ENV_PREFIX) -> "ConfigLoader":
        """Load configuration from environment variables"""
        env_mappings = {
            f"{prefix}FIXTURES": "fixtures_dir",
            f"{prefix}FIXTURES_DIR": "fixtures_dir",
            f"{prefix}DEFAULT_EMIT": "default_emit",
            f"{prefix}DEFAULT_FORMAT": "default_format",
            f"{prefix}FUZZ_COUNT": "fuzz_count",
            f"{prefix}FUZZ_MAX_VERTICES": "fuzz_max_vertices",
            f"{prefix}VERBOSE": "verbose",
            f"{prefix}DEBUG": "debug",
            f"{prefix}COLORIZE": "colorize",
            f"{prefix}LOG_LEVEL": "log_level",
        }

        for env_var, config_attr in env_mappings.items():
            value = os.getenv(env_var)
            if value is not None:
                setattr(self.config, config_attr, self._convert_env_value(config_attr, value))
                self.config._config_sources.append(f"env:{env_var}")

        return self

    def load_from_file(self, config_path: Optional[str] = None) -> "ConfigLoader":
        """Load a .env file into the environment without overriding it, then re-read the environment"""
        if config_path is None:
            for path in (Path(".env"), Path(".env.local")):
                if path.exists():
                    config_path = str(path)
                    break

        if config_path and Path(config_path).exists():
            load_dotenv(config_path, override=False)
            self.config._config_sources.append(f"file:{config_path}")
            self.load_from_env()

        return self

    def load_from_dict(self, config_dict: Dict[str, Any]) -> "ConfigLoader":
        """Load configuration from a dictionary"""
        for key, value in config_dict.items():
            if hasattr(self.config, key):
                setattr(self.config, key, value)
                self.config._config_sources.append(f"dict:{key}")

        return self

    def override_from_args(self, **kwargs) -> "ConfigLoader":
        """Override configuration with direct arguments; None means not given"""
        for key, value in kwargs.items():
            if hasattr(self.config, key) and value is not None:
                setattr(self.config, key, value)
                self.config._config_sources.append(f"arg:{key}")

        return self

    def get_config(self) -> Sparql2GremlinConfig:
        """Get the final configuration, re-validated"""
        self.config.__post_init__()
        return self.config

    def _convert_env_value(self, attr_name: str, value: str) -> Any:
        """Convert string environment values to the field's type"""
        config_field_type = Sparql2GremlinConfig.__annotations__.get(attr_name, str)

        # Handle Optional types
        if getattr(config_field_type, "__origin__", None) is Union:
            non_none_types = [t for t in config_field_type.__args__ if t is not type(None)]
            if non_none_types:
                config_field_type = non_none_types[0]

        if config_field_type is bool:
            return value.lower() in ("true", "1", "yes", "on", "enabled")
        if config_field_type is int:
            try:
                return int(value)
            except ValueError:
                return getattr(self.config, attr_name)  # Keep current value
        return value


def load_config(config_path: Optional[str] = None, **overrides) -> Sparql2GremlinConfig:
    """
    Load configuration from all available sources

    Args:
        config_path: Path to a .env file
        **overrides: Direct configuration overrides

    Returns:
        Configured Sparql2GremlinConfig instance
    """
    loader = ConfigLoader()
    loader.load_from_env()
    loader.load_from_file(config_path)
    if overrides:
        loader.override_from_args(**overrides)
    return loader.get_config()


def get_default_config() -> Sparql2GremlinConfig:
    """Get a default configuration (useful for testing)"""
    return Sparql2GremlinConfig()


# Global config instance (can be overridden)
_global_config: Optional[Sparql2GremlinConfig] = None


def get_global_config() -> Sparql2GremlinConfig:
    """Get the global configuration instance"""
    global _global_config
    if _global_config is None:
        _global_config = load_config()
    return _global_config


def set_global_config(config: Optional[Sparql2GremlinConfig]) -> None:
    """Set the global configuration instance; None resets it"""
    global _global_config
    _global_config = config
