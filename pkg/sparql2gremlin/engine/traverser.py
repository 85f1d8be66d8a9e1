"""
Traversers: the unit of execution of the engine
"""
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from ..core.terms import UNBOUND, Value


@dataclass(frozen=True)
class Traverser:
    """Current focus plus the ``as()`` bindings collected so far"""
    bindings: Mapping[str, Value] = field(default_factory=dict)
    current: Optional[Value] = None

    def __post_init__(self):
        if not isinstance(self.bindings, MappingProxyType):
            object.__setattr__(self, "bindings", MappingProxyType(dict(self.bindings)))

    def lookup(self, name: str) -> Value:
        return self.bindings.get(name, UNBOUND)

    def bind(self, name: str, value: Value) -> "Traverser":
        bindings = dict(self.bindings)
        bindings[name] = value
        return Traverser(MappingProxyType(bindings), self.current)

    def moved(self, value: Optional[Value]) -> "Traverser":
        return Traverser(self.bindings, value)


@dataclass(frozen=True)
class Scope:
    """Where a traversal runs: top level, inside a union branch, or inside a match pattern"""
    top: bool = False
    in_pattern: bool = False


TOP = Scope(top=True)
BRANCH = Scope()
PATTERN = Scope(in_pattern=True)
