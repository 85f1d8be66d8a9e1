"""
Shared pytest fixtures: bundled graphs, the corpus, and a clean global config
"""
import pytest

from sparql2gremlin.config import set_global_config
from sparql2gremlin.core.graph import Edge, PropertyGraph, Vertex
from sparql2gremlin.core.terms import Literal
from sparql2gremlin.fixtures import load_corpus, load_dataset


@pytest.fixture(autouse=True)
def reset_global_config(monkeypatch):
    """Each test starts without a cached config or a fixtures override"""
    monkeypatch.delenv("SPARQL2GREMLIN_FIXTURES", raising=False)
    monkeypatch.delenv("SPARQL2GREMLIN_FIXTURES_DIR", raising=False)
    set_global_config(None)
    yield
    set_global_config(None)


@pytest.fixture
def g0() -> PropertyGraph:
    return load_dataset("g0")


@pytest.fixture
def commerce() -> PropertyGraph:
    return load_dataset("commerce")


@pytest.fixture
def corpus():
    return load_corpus()


def build_g0() -> PropertyGraph:
    """G0 built in code, independent of the fixture files"""
    return PropertyGraph(
        [
            Vertex("1", "person", {"name": Literal.string("alice"), "age": Literal.integer(30)}),
            Vertex("2", "person", {"name": Literal.string("bob"), "age": Literal.integer(25)}),
            Vertex("3", "software", {"name": Literal.string("grem")}),
        ],
        [
            Edge("e1", "knows", "1", "2"),
            Edge("e2", "created", "1", "3"),
            Edge("e3", "created", "2", "3"),
        ],
    )
