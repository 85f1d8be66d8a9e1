"""
Configuration loading: environment, .env files and overrides
"""
import os

import pytest

from sparql2gremlin.config import (
    ConfigLoader,
    Sparql2GremlinConfig,
    get_global_config,
    load_config,
    set_global_config,
)

SETTINGS = ("FIXTURES", "FIXTURES_DIR", "DEFAULT_EMIT", "DEFAULT_FORMAT", "FUZZ_COUNT",
            "FUZZ_MAX_VERTICES", "VERBOSE", "DEBUG", "COLORIZE", "LOG_LEVEL")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """load_dotenv writes to os.environ directly, so clear our keys afterwards too"""
    for name in SETTINGS:
        monkeypatch.delenv(f"SPARQL2GREMLIN_{name}", raising=False)
    yield
    for name in SETTINGS:
        os.environ.pop(f"SPARQL2GREMLIN_{name}", None)


def test_defaults():
    config = Sparql2GremlinConfig()
    assert config.fixtures_dir is None
    assert config.default_emit == "groovy"
    assert config.default_format == "tsv"
    assert config.fuzz_count == 100
    assert config.effective_log_level == "WARNING"


def test_invalid_values_fall_back():
    config = Sparql2GremlinConfig(log_level="loud", default_emit="xml", default_format="csv",
                                  fuzz_count=0, fuzz_max_vertices=-3)
    assert config.log_level == "WARNING"
    assert config.default_emit == "groovy"
    assert config.default_format == "tsv"
    assert config.fuzz_count == 100
    assert config.fuzz_max_vertices == 8


def test_log_level_is_upper_cased():
    assert Sparql2GremlinConfig(log_level="debug").log_level == "DEBUG"


@pytest.mark.parametrize("verbose, debug, level", [
    (False, False, "WARNING"),
    (True, False, "INFO"),
    (False, True, "DEBUG"),
    (True, True, "DEBUG"),
])
def test_effective_log_level(verbose, debug, level):
    assert Sparql2GremlinConfig(verbose=verbose, debug=debug).effective_log_level == level


def test_environment_variables(monkeypatch, tmp_path):
    monkeypatch.setenv("SPARQL2GREMLIN_FIXTURES", str(tmp_path))
    monkeypatch.setenv("SPARQL2GREMLIN_DEFAULT_EMIT", "both")
    monkeypatch.setenv("SPARQL2GREMLIN_FUZZ_COUNT", "25")
    monkeypatch.setenv("SPARQL2GREMLIN_VERBOSE", "yes")
    monkeypatch.setenv("SPARQL2GREMLIN_COLORIZE", "0")

    config = load_config()
    assert config.fixtures_dir == str(tmp_path)
    assert config.default_emit == "both"
    assert config.fuzz_count == 25
    assert config.verbose is True
    assert config.colorize is False
    assert "env:SPARQL2GREMLIN_FUZZ_COUNT" in config._config_sources


def test_bad_integer_keeps_default(monkeypatch):
    monkeypatch.setenv("SPARQL2GREMLIN_FUZZ_MAX_VERTICES", "many")
    assert load_config().fuzz_max_vertices == 8


def test_env_file(tmp_path):
    env_file = tmp_path / "settings.env"
    env_file.write_text("SPARQL2GREMLIN_DEFAULT_FORMAT=table\nSPARQL2GREMLIN_LOG_LEVEL=info\n")

    config = load_config(str(env_file))
    assert config.default_format == "table"
    assert config.log_level == "INFO"
    assert f"file:{env_file}" in config._config_sources


def test_environment_wins_over_env_file(monkeypatch, tmp_path):
    env_file = tmp_path / "settings.env"
    env_file.write_text("SPARQL2GREMLIN_DEFAULT_EMIT=bytecode\n")
    monkeypatch.setenv("SPARQL2GREMLIN_DEFAULT_EMIT", "both")
    assert load_config(str(env_file)).default_emit == "both"


def test_missing_env_file_is_ignored(tmp_path):
    assert load_config(str(tmp_path / "absent.env")).default_emit == "groovy"


def test_overrides_win_and_none_is_ignored(monkeypatch):
    monkeypatch.setenv("SPARQL2GREMLIN_DEBUG", "false")
    config = load_config(debug=True, verbose=None)
    assert config.debug is True
    assert config.verbose is False


def test_load_from_dict_skips_unknown_keys():
    config = ConfigLoader().load_from_dict({"fuzz_count": 7, "colour": "red"}).get_config()
    assert config.fuzz_count == 7
    assert not hasattr(config, "colour")


def test_global_config_is_cached_and_resettable():
    first = get_global_config()
    assert get_global_config() is first
    custom = Sparql2GremlinConfig(fuzz_count=3)
    set_global_config(custom)
    assert get_global_config() is custom
    set_global_config(None)
    assert get_global_config() is not custom
