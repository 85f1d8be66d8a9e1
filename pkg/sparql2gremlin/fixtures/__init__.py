"""
Bundled fixtures: graphs and the feature corpus

```python
from sparql2gremlin.fixtures import list_datasets, load_corpus, load_dataset

graph = load_dataset("g0")
for entry in load_corpus():
    print(entry.id, entry.feature, entry.dataset)
```

## Layout

- **graphs/g0.json**: three vertices (two persons, one software), three edges
- **graphs/commerce.json**: a small shop with persons, vendors, products and offers
- **corpus.json**: thirty queries, three per feature class
- **queries/<id>.rq**: the query texts

Set ``SPARQL2GREMLIN_FIXTURES`` to use a different directory with the same layout.
"""
import json
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictStr
from pydantic import ValidationError as PydanticValidationError

from ..config import get_global_config
from ..core.errors import FixtureError
from ..core.graph import PropertyGraph
from ..engine.loader import read_graph

FEATURE_CLASSES = ("C", "F", "L", "G", "Gc", "O", "U", "Op", "M", "S")

FEATURE_DESCRIPTIONS = {
    "C": "conjunctive patterns with a varying number of triple patterns",
    "F": "patterns with one or more FILTER constraints",
    "L": "patterns with LIMIT and OFFSET",
    "G": "patterns with GROUP BY",
    "Gc": "patterns with GROUP BY and COUNT",
    "O": "patterns with ORDER BY",
    "U": "patterns with UNION",
    "Op": "patterns with OPTIONAL triple patterns",
    "M": "patterns mixing the features above",
    "S": "star-shaped patterns with ten or more triple patterns",
}


class CorpusEntry(BaseModel):
    """One corpus query with the dataset it runs against"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    id: StrictStr
    feature: StrictStr
    dataset: StrictStr
    query: StrictStr  # path of the .rq file, relative to the fixtures directory
    text: str = ""


class CorpusManifest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entries: list[CorpusEntry] = Field(default_factory=list)


def get_bundled_fixtures_dir() -> Path:
    """Get the fixtures directory shipped with the package"""
    return Path(__file__).parent


def get_fixtures_dir(override: Optional[Union[str, Path]] = None) -> Path:
    """
    Resolve the fixtures directory.

    Args:
        override: explicit directory; otherwise the configured one, otherwise the bundled one

    Returns:
        Path to an existing directory
    """
    if override is None:
        override = get_global_config().fixtures_dir
    path = Path(override) if override else get_bundled_fixtures_dir()
    if not path.is_dir():
        raise FixtureError(f"fixtures directory not found: {path}")
    return path


def get_graphs_dir(fixtures_dir: Optional[Union[str, Path]] = None) -> Path:
    return get_fixtures_dir(fixtures_dir) / "graphs"


def get_golden_dir(fixtures_dir: Optional[Union[str, Path]] = None) -> Path:
    """Committed translations of the corpus: ``<id>.groovy`` and ``<id>.gbc.json``"""
    return get_fixtures_dir(fixtures_dir) / "golden"


def resolve_graphs_dir(graph_dir: Optional[Union[str, Path]] = None,
                       fixtures_dir: Optional[Union[str, Path]] = None) -> Path:
    """An explicit graph directory, or the fixtures' one; a missing directory raises FixtureError"""
    directory = Path(graph_dir) if graph_dir else get_graphs_dir(fixtures_dir)
    if not directory.is_dir():
        raise FixtureError(f"graph directory not found: {directory}")
    return directory


def list_datasets(graph_dir: Optional[Union[str, Path]] = None) -> list[str]:
    """List the dataset names (graph file stems) available"""
    directory = resolve_graphs_dir(graph_dir)
    return sorted(path.stem for path in directory.glob("*.json"))


def get_dataset_path(name: str, graph_dir: Optional[Union[str, Path]] = None) -> Path:
    directory = Path(graph_dir) if graph_dir else get_graphs_dir()
    path = directory / f"{name}.json"
    if not path.exists():
        raise FixtureError(f"unknown dataset {name!r} (no {path})")
    return path


def load_dataset(name: str, graph_dir: Optional[Union[str, Path]] = None) -> PropertyGraph:
    """Load a dataset by name; graph problems raise GraphFormatError"""
    return read_graph(get_dataset_path(name, graph_dir))


def load_corpus(fixtures_dir: Optional[Union[str, Path]] = None) -> list[CorpusEntry]:
    """Read the corpus manifest and the query text of every entry"""
    directory = get_fixtures_dir(fixtures_dir)
    manifest_path = directory / "corpus.json"
    try:
        raw = json.loads(manifest_path.read_text(encoding="utf-8"))
        manifest = CorpusManifest.model_validate(raw)
    except OSError as e:
        raise FixtureError(f"cannot read corpus manifest {manifest_path}: {e.strerror or e}") from e
    except (json.JSONDecodeError, PydanticValidationError) as e:
        raise FixtureError(f"bad corpus manifest {manifest_path}: {e}") from e

    entries = []
    for entry in manifest.entries:
        query_path = directory / entry.query
        try:
            text = query_path.read_text(encoding="utf-8")
        except OSError as e:
            raise FixtureError(f"corpus entry {entry.id}: cannot read {query_path}") from e
        entries.append(entry.model_copy(update={"text": text}))
    return entries


def get_corpus_entry(entry_id: str, fixtures_dir: Optional[Union[str, Path]] = None) -> CorpusEntry:
    for entry in load_corpus(fixtures_dir):
        if entry.id == entry_id:
            return entry
    raise FixtureError(f"unknown corpus entry {entry_id!r}")


__all__ = [
    'FEATURE_CLASSES',
    'FEATURE_DESCRIPTIONS',
    'CorpusEntry',
    'get_bundled_fixtures_dir',
    'get_fixtures_dir',
    'get_graphs_dir',
    'get_golden_dir',
    'resolve_graphs_dir',
    'list_datasets',
    'get_dataset_path',
    'load_dataset',
    'load_corpus',
    'get_corpus_entry',
]
