"""
Namespace constants and the prefix table

The ``v:`` and ``e:`` prefixes keep the Gremlin step category visible in a
SPARQL predicate: ``v:`` names vertex properties (and ``v:label``), ``e:``
names edge labels. Vertex identities live in their own ``urn:pg:v:`` scheme.
"""
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from .errors import RedefinedBuiltinPrefix, UnknownPrefix
from .terms import Iri

VERTEX_PROPERTY_NS = "urn:pg:vp:"
EDGE_NS = "urn:pg:e:"
VERTEX_NS = "urn:pg:v:"

LABEL_KEY = "label"
LABEL_PREDICATE = Iri(VERTEX_PROPERTY_NS + LABEL_KEY)

BUILTIN_PREFIXES: Mapping[str, Iri] = MappingProxyType({
    "v": Iri(VERTEX_PROPERTY_NS),
    "e": Iri(EDGE_NS),
})


@dataclass(frozen=True)
class PrefixTable:
    """Prefix → namespace map; the built-ins are always present"""

    additions: Mapping[str, Iri] = field(default_factory=dict)

    def __post_init__(self):
        for prefix in self.additions:
            if prefix in BUILTIN_PREFIXES:
                raise RedefinedBuiltinPrefix(f"prefix '{prefix}:' is built in and cannot be redefined")
        object.__setattr__(self, "additions", MappingProxyType(dict(self.additions)))

    def with_prefix(self, prefix: str, namespace: Iri) -> "PrefixTable":
        if prefix in BUILTIN_PREFIXES:
            raise RedefinedBuiltinPrefix(f"prefix '{prefix}:' is built in and cannot be redefined")
        merged = dict(self.additions)
        merged[prefix] = namespace
        return PrefixTable(merged)

    def lookup(self, prefix: str) -> Optional[Iri]:
        if prefix in BUILTIN_PREFIXES:
            return BUILTIN_PREFIXES[prefix]
        return self.additions.get(prefix)

    def __eq__(self, other):
        if not isinstance(other, PrefixTable):
            return NotImplemented
        return dict(self.additions) == dict(other.additions)

    def __hash__(self):
        return hash(tuple(sorted((k, v.value) for k, v in self.additions.items())))


BUILTINS = PrefixTable()


def expand_prefix(pname: str, table: PrefixTable = BUILTINS) -> Iri:
    """Expand ``prefix:local`` against ``table``"""
    prefix, sep, local = pname.partition(":")
    if not sep:
        raise UnknownPrefix(f"'{pname}' is not a prefixed name")
    namespace = table.lookup(prefix)
    if namespace is None:
        raise UnknownPrefix(f"prefix '{prefix}:' is not defined")
    return Iri(namespace.value + local)


def vertex_iri(vertex_id: str) -> Iri:
    return Iri(VERTEX_NS + vertex_id)


def vertex_id_of(iri: Iri) -> Optional[str]:
    """Inverse of ``vertex_iri``; None for IRIs outside the vertex scheme"""
    if iri.value.startswith(VERTEX_NS) and len(iri.value) > len(VERTEX_NS):
        return iri.value[len(VERTEX_NS):]
    return None
