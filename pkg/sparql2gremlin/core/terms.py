"""
RDF terms, triples and the engine-side vertex reference

Terms are immutable values. ``Literal`` equality is kind-sensitive except that
Integer and Double compare numerically, so ``Literal.integer(30)`` equals
``Literal.double(30.0)`` and both hash alike.
"""
import math
import re
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Union

from .errors import InvalidTerm

VAR_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_WHITESPACE = re.compile(r"\s")

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


@dataclass(frozen=True)
class Iri:
    """Absolute IRI, stored without angle brackets"""
    value: str

    def __post_init__(self):
        if not isinstance(self.value, str) or not self.value:
            raise InvalidTerm("IRI must be a non-empty string")
        if _WHITESPACE.search(self.value) or "<" in self.value or ">" in self.value:
            raise InvalidTerm(f"IRI may not contain whitespace or angle brackets: {self.value!r}")

    def __str__(self) -> str:
        return f"<{self.value}>"


class LiteralKind(str, Enum):
    STRING = "String"
    INTEGER = "Integer"
    DOUBLE = "Double"
    BOOLEAN = "Boolean"


@dataclass(frozen=True, eq=False)
class Literal:
    kind: LiteralKind
    value: Union[str, int, float, bool]

    def __post_init__(self):
        kind, value = self.kind, self.value
        if kind is LiteralKind.STRING:
            ok = isinstance(value, str)
        elif kind is LiteralKind.INTEGER:
            ok = isinstance(value, int) and not isinstance(value, bool)
            if ok and not INT64_MIN <= value <= INT64_MAX:
                raise InvalidTerm(f"integer literal out of 64-bit range: {value}")
        elif kind is LiteralKind.DOUBLE:
            ok = isinstance(value, float)
            if ok and not math.isfinite(value):
                raise InvalidTerm("double literal must be finite")
        elif kind is LiteralKind.BOOLEAN:
            ok = isinstance(value, bool)
        else:
            ok = False
        if not ok:
            raise InvalidTerm(f"{value!r} is not a valid {kind} literal")

    @classmethod
    def string(cls, value: str) -> "Literal":
        return cls(LiteralKind.STRING, value)

    @classmethod
    def integer(cls, value: int) -> "Literal":
        return cls(LiteralKind.INTEGER, value)

    @classmethod
    def double(cls, value: float) -> "Literal":
        return cls(LiteralKind.DOUBLE, float(value))

    @classmethod
    def boolean(cls, value: bool) -> "Literal":
        return cls(LiteralKind.BOOLEAN, value)

    @classmethod
    def from_python(cls, value: Union[str, int, float, bool]) -> "Literal":
        """Build a literal from a plain JSON-style scalar"""
        if isinstance(value, bool):
            return cls.boolean(value)
        if isinstance(value, int):
            return cls.integer(value)
        if isinstance(value, float):
            return cls.double(value)
        if isinstance(value, str):
            return cls.string(value)
        raise InvalidTerm(f"unsupported literal value: {value!r}")

    @property
    def is_numeric(self) -> bool:
        return self.kind in (LiteralKind.INTEGER, LiteralKind.DOUBLE)

    def __eq__(self, other):
        if not isinstance(other, Literal):
            return NotImplemented
        if self.is_numeric and other.is_numeric:
            return self.value == other.value
        return self.kind is other.kind and self.value == other.value

    def __hash__(self):
        if self.is_numeric:
            return hash(("numeric", self.value))
        return hash((self.kind, self.value))

    def lexical(self) -> str:
        """Unquoted canonical text (decimal numbers, lowercase booleans)"""
        if self.kind is LiteralKind.BOOLEAN:
            return "true" if self.value else "false"
        if self.kind is LiteralKind.DOUBLE:
            return canonical_double(self.value)
        return str(self.value)

    def __repr__(self) -> str:
        return f"Literal.{self.kind.name.lower()}({self.value!r})"


def canonical_double(value: float) -> str:
    """Shortest round-trip digits, always positional, at least one fractional digit"""
    text = format(Decimal(repr(value)), "f")
    if "." not in text:
        text += ".0"
    return text


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not VAR_NAME.match(self.name):
            raise InvalidTerm(f"invalid variable name: {self.name!r}")

    def __str__(self) -> str:
        return f"?{self.name}"


class UnboundType:
    """Sentinel for a variable without a value; unequal to every IRI and literal"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNBOUND"

    def __reduce__(self):
        return (UnboundType, ())


UNBOUND = UnboundType()


@dataclass(frozen=True)
class VertexRef:
    """A vertex as seen by the traversal engine"""
    id: str


Term = Union[Iri, Literal, Var, UnboundType]
Value = Union[Iri, Literal, VertexRef, UnboundType]


@dataclass(frozen=True)
class Triple:
    s: Term
    p: Term
    o: Term

    @property
    def is_concrete(self) -> bool:
        return not any(isinstance(t, (Var, UnboundType)) for t in (self.s, self.p, self.o))

    def variables(self) -> list[str]:
        """Variable names in s, p, o order (duplicates kept once)"""
        names: list[str] = []
        for term in (self.s, self.p, self.o):
            if isinstance(term, Var) and term.name not in names:
                names.append(term.name)
        return names
