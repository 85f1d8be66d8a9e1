"""
Property graph data model

Vertices carry a label and single-valued properties; edges carry only a label.
A ``PropertyGraph`` validates its invariants on construction and keeps an
out-edge index in insertion order so traversals enumerate deterministically.
"""
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from .errors import GraphFormatError
from .prefixes import LABEL_KEY
from .terms import Literal

ID_PATTERN = re.compile(r"[A-Za-z0-9_-]+\Z")


@dataclass(frozen=True)
class Vertex:
    id: str
    label: str
    properties: Mapping[str, Literal] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.id, str) or not ID_PATTERN.match(self.id):
            raise GraphFormatError(f"bad vertex id {self.id!r}: ids must match [A-Za-z0-9_-]+")
        if not isinstance(self.label, str):
            raise GraphFormatError(f"vertex {self.id}: label must be a string")
        for key, value in self.properties.items():
            if not isinstance(key, str) or not ID_PATTERN.match(key):
                raise GraphFormatError(f"vertex {self.id}: bad property key {key!r}")
            if key == LABEL_KEY:
                raise GraphFormatError(f"vertex {self.id}: '{LABEL_KEY}' is reserved and cannot be a property key")
            if not isinstance(value, Literal):
                raise GraphFormatError(f"vertex {self.id}: property {key} is not a literal")
        object.__setattr__(self, "properties", MappingProxyType(dict(self.properties)))

    def __hash__(self):
        return hash(self.id)


@dataclass(frozen=True)
class Edge:
    id: str
    label: str
    source: str
    target: str

    def __post_init__(self):
        if not isinstance(self.id, str) or not ID_PATTERN.match(self.id):
            raise GraphFormatError(f"bad edge id {self.id!r}: ids must match [A-Za-z0-9_-]+")
        if not isinstance(self.label, str) or not ID_PATTERN.match(self.label):
            raise GraphFormatError(f"edge {self.id}: bad edge label {self.label!r}")


class PropertyGraph:
    """Immutable, validated property graph"""

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Edge] = ()):
        self._vertices: dict[str, Vertex] = {}
        self._edges: dict[str, Edge] = {}
        self._out: dict[str, list[Edge]] = {}

        for vertex in vertices:
            if vertex.id in self._vertices:
                raise GraphFormatError(f"duplicate vertex id {vertex.id}")
            self._vertices[vertex.id] = vertex
            self._out[vertex.id] = []

        for edge in edges:
            if edge.id in self._edges:
                raise GraphFormatError(f"duplicate edge id {edge.id}")
            for endpoint in (edge.source, edge.target):
                if endpoint not in self._vertices:
                    raise GraphFormatError(f"edge {edge.id}: dangling endpoint {endpoint}")
            self._edges[edge.id] = edge
            self._out[edge.source].append(edge)

    @property
    def vertices(self) -> Mapping[str, Vertex]:
        return MappingProxyType(self._vertices)

    @property
    def edges(self) -> Mapping[str, Edge]:
        return MappingProxyType(self._edges)

    def vertex(self, vertex_id: str) -> Vertex:
        return self._vertices[vertex_id]

    def iter_vertices(self) -> Iterator[Vertex]:
        return iter(self._vertices.values())

    def out_edges(self, vertex_id: str, label: Optional[str] = None) -> list[Edge]:
        return [e for e in self._out.get(vertex_id, ()) if label is None or e.label == label]

    @property
    def property_count(self) -> int:
        return sum(len(v.properties) for v in self._vertices.values())

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other):
        if not isinstance(other, PropertyGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __repr__(self) -> str:
        return f"PropertyGraph(vertices={len(self._vertices)}, edges={len(self._edges)})"
