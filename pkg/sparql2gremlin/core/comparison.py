"""
Value comparison and total order shared by the traversal engine and the oracle

Both evaluators must agree bit for bit, so FILTER comparisons, join
compatibility and ORDER BY all go through this module. Engine-side vertex
references are canonicalized to their ``urn:pg:v:`` IRI first.
"""
from enum import Enum
from typing import Any

from .prefixes import vertex_iri
from .terms import UNBOUND, Iri, Literal, LiteralKind, UnboundType, Value, VertexRef


class CompareOp(str, Enum):
    EQ = "="
    NEQ = "!="
    LT = "<"
    GT = ">"
    LTE = "<="
    GTE = ">="

    @property
    def gremlin(self) -> str:
        return _GREMLIN_NAMES[self]

    @classmethod
    def from_gremlin(cls, name: str) -> "CompareOp":
        for op, gremlin_name in _GREMLIN_NAMES.items():
            if gremlin_name == name:
                return op
        raise ValueError(f"unknown predicate operator: {name}")

    def flipped(self) -> "CompareOp":
        """Operator for the same comparison with operands swapped"""
        return _FLIPPED[self]


_GREMLIN_NAMES = {
    CompareOp.EQ: "eq",
    CompareOp.NEQ: "neq",
    CompareOp.LT: "lt",
    CompareOp.GT: "gt",
    CompareOp.LTE: "lte",
    CompareOp.GTE: "gte",
}

_FLIPPED = {
    CompareOp.EQ: CompareOp.EQ,
    CompareOp.NEQ: CompareOp.NEQ,
    CompareOp.LT: CompareOp.GT,
    CompareOp.GT: CompareOp.LT,
    CompareOp.LTE: CompareOp.GTE,
    CompareOp.GTE: CompareOp.LTE,
}


class Direction(str, Enum):
    ASC = "asc"
    DESC = "desc"


def canonical(value: Value) -> Value:
    """Map engine vertex references onto their RDF-side IRI"""
    if isinstance(value, VertexRef):
        return vertex_iri(value.id)
    return value


def values_equal(a: Value, b: Value) -> bool:
    """Term equality; Unbound equals nothing, not even itself"""
    a, b = canonical(a), canonical(b)
    if isinstance(a, UnboundType) or isinstance(b, UnboundType):
        return False
    return a == b


def _category(value: Value) -> str:
    if isinstance(value, Literal):
        if value.is_numeric:
            return "number"
        return value.kind.value
    if isinstance(value, Iri):
        return "iri"
    return "other"


def compare_values(a: Value, op: CompareOp, b: Value) -> bool:
    """FILTER comparison; every operator fails on Unbound"""
    a, b = canonical(a), canonical(b)
    if a is UNBOUND or b is UNBOUND:
        return False
    if op is CompareOp.EQ:
        return a == b
    if op is CompareOp.NEQ:
        return a != b

    category = _category(a)
    if category != _category(b) or category == "other":
        return False
    left = a.value
    right = b.value
    if op is CompareOp.LT:
        return left < right
    if op is CompareOp.GT:
        return left > right
    if op is CompareOp.LTE:
        return left <= right
    return left >= right


def sort_key(value: Value) -> tuple[int, Any]:
    """Unbound < Boolean < numbers < String < vertex / IRI"""
    value = canonical(value)
    if isinstance(value, UnboundType):
        return (0, 0)
    if isinstance(value, Literal):
        if value.kind is LiteralKind.BOOLEAN:
            return (1, int(value.value))
        if value.is_numeric:
            return (2, value.value)
        return (3, value.value)
    if isinstance(value, Iri):
        return (4, value.value)
    raise TypeError(f"value {value!r} has no place in the total order")


def sort_rows(rows: list[tuple], keys: list[tuple[int, Direction]]) -> list[tuple]:
    """Stable multi-key sort; ``keys`` are (column index, direction) pairs"""
    ordered = list(rows)
    for index, direction in reversed(keys):
        ordered.sort(key=lambda row: sort_key(row[index]), reverse=direction is Direction.DESC)
    return ordered
