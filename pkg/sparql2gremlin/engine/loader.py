"""
Graph file format

    {"vertices": [{"id": "1", "label": "person", "properties": {"name": "alice", "age": 30}}],
     "edges": [{"id": "e1", "label": "knows", "from": "1", "to": "2"}]}

Property values are strings, integers, doubles (written with a decimal point)
or booleans. Every structural problem surfaces as ``GraphFormatError``.
"""
import json
import logging
from pathlib import Path
from typing import Union

from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictFloat, StrictInt, StrictStr
from pydantic import ValidationError as PydanticValidationError

from ..core.errors import GraphFormatError, InvalidTerm
from ..core.graph import Edge, PropertyGraph, Vertex
from ..core.terms import Literal, LiteralKind

logger = logging.getLogger(__name__)

PropertyValue = Union[StrictBool, StrictInt, StrictFloat, StrictStr]


class VertexRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: StrictStr
    label: StrictStr
    properties: dict[StrictStr, PropertyValue] = Field(default_factory=dict)


class EdgeRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: StrictStr
    label: StrictStr
    source: StrictStr = Field(alias="from")
    target: StrictStr = Field(alias="to")


class GraphRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: list[VertexRecord] = Field(default_factory=list)
    edges: list[EdgeRecord] = Field(default_factory=list)


def _reject_duplicate_keys(pairs: list[tuple[str, object]]) -> dict:
    result: dict = {}
    for key, value in pairs:
        if key in result:
            raise GraphFormatError(f"duplicate key {key!r} in graph document")
        result[key] = value
    return result


def _reject_constant(name: str):
    raise GraphFormatError(f"{name} is not a valid property value")


def _describe(error: PydanticValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "document"
    return f"{location}: {first['msg']}"


def load_graph(document: str) -> PropertyGraph:
    """Parse and validate a graph document"""
    try:
        raw = json.loads(document, object_pairs_hook=_reject_duplicate_keys, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"not valid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from e

    try:
        record = GraphRecord.model_validate(raw)
    except PydanticValidationError as e:
        raise GraphFormatError(f"bad graph document: {_describe(e)}") from e

    try:
        vertices = [
            Vertex(v.id, v.label, {k: Literal.from_python(x) for k, x in v.properties.items()})
            for v in record.vertices
        ]
        edges = [Edge(e.id, e.label, e.source, e.target) for e in record.edges]
    except InvalidTerm as e:
        raise GraphFormatError(f"bad property value: {e.message}") from e

    graph = PropertyGraph(vertices, edges)
    logger.debug("loaded %r", graph)
    return graph


def read_graph(path: Union[str, Path]) -> PropertyGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GraphFormatError(f"cannot read graph file {path}: {e.strerror or e}") from e
    return load_graph(text)


def _property_json(value: Literal) -> Union[str, int, float, bool]:
    if value.kind is LiteralKind.DOUBLE:
        return float(value.value)
    return value.value


def dump_graph(graph: PropertyGraph) -> str:
    """Serialize ``graph`` so that ``load_graph(dump_graph(g)) == g``"""
    document = {
        "vertices": [
            {
                "id": v.id,
                "label": v.label,
                "properties": {k: _property_json(x) for k, x in v.properties.items()},
            }
            for v in graph.iter_vertices()
        ],
        "edges": [
            {"id": e.id, "label": e.label, "from": e.source, "to": e.target}
            for e in graph.edges.values()
        ],
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
