"""
Traversal step algebra

A ``Traversal`` is an immutable tuple of steps; ``Match``, ``UnionStep`` and
``Coalesce`` nest further traversals. Steps check their own structural
invariants on construction so every serializer can assume well-formed input.
"""
from dataclasses import dataclass
from typing import Union

from ..core.comparison import CompareOp, Direction
from ..core.terms import UNBOUND, Literal, LiteralKind, UnboundType

UNBOUNDED_HI = -1
UNBOUND_MARKER = "urn:pg:unbound"


@dataclass(frozen=True)
class VarRef:
    """Right-hand side of a Where predicate naming another binding"""
    name: str


@dataclass(frozen=True)
class Pred:
    op: CompareOp
    value: Union[Literal, VarRef]


@dataclass(frozen=True)
class OrPred:
    preds: tuple[Pred, ...]

    def __post_init__(self):
        object.__setattr__(self, "preds", tuple(self.preds))
        if len(self.preds) < 2:
            raise ValueError("OrPred needs at least two predicates")
        if any(not isinstance(p.value, Literal) for p in self.preds):
            raise ValueError("OrPred predicates compare against literals only")


Predicate = Union[Pred, OrPred]


@dataclass(frozen=True)
class Traversal:
    steps: tuple["Step", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __add__(self, other: "Traversal") -> "Traversal":
        return Traversal(self.steps + tuple(other.steps))


def _check_nested(owner: str, traversals: tuple) -> tuple:
    traversals = tuple(traversals)
    if not traversals:
        raise ValueError(f"{owner} needs at least one sub-traversal")
    for traversal in traversals:
        if not isinstance(traversal, Traversal):
            raise TypeError(f"{owner} arguments must be traversals")
        if traversal.steps and isinstance(traversal.steps[0], V):
            raise ValueError(f"{owner} sub-traversals may not start with V()")
    return traversals


@dataclass(frozen=True)
class V:
    pass


@dataclass(frozen=True)
class Match:
    traversals: tuple[Traversal, ...]

    def __post_init__(self):
        object.__setattr__(self, "traversals", _check_nested("match", self.traversals))


@dataclass(frozen=True)
class UnionStep:
    traversals: tuple[Traversal, ...]

    def __post_init__(self):
        object.__setattr__(self, "traversals", _check_nested("union", self.traversals))


@dataclass(frozen=True)
class As:
    name: str


@dataclass(frozen=True)
class Out:
    label: str


@dataclass(frozen=True)
class Values:
    key: str


@dataclass(frozen=True)
class Label:
    pass


@dataclass(frozen=True)
class Has:
    key: str
    pred: Pred

    def __post_init__(self):
        if not isinstance(self.pred.value, Literal):
            raise ValueError("has() compares against a literal")


@dataclass(frozen=True)
class HasLabel:
    value: Literal


@dataclass(frozen=True)
class HasId:
    id: str


@dataclass(frozen=True)
class Where:
    var: str
    pred: Predicate


@dataclass(frozen=True)
class Coalesce:
    traversals: tuple[Traversal, ...]

    def __post_init__(self):
        object.__setattr__(self, "traversals", _check_nested("coalesce", self.traversals))


@dataclass(frozen=True)
class Constant:
    value: Union[Literal, UnboundType] = UNBOUND

    def __post_init__(self):
        value = self.value
        if isinstance(value, Literal) and value.kind is LiteralKind.STRING and value.value == UNBOUND_MARKER:
            raise ValueError(f"'{UNBOUND_MARKER}' is reserved for the unbound constant")


@dataclass(frozen=True)
class Select:
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ValueError("select() needs at least one name")


@dataclass(frozen=True)
class Dedup:
    pass


@dataclass(frozen=True)
class Order:
    keys: tuple[tuple[str, Direction], ...]

    def __post_init__(self):
        object.__setattr__(self, "keys", tuple((name, Direction(d)) for name, d in self.keys))
        if not self.keys:
            raise ValueError("order() needs at least one key")


@dataclass(frozen=True)
class Range:
    lo: int
    hi: int = UNBOUNDED_HI

    def __post_init__(self):
        if self.lo < 0:
            raise ValueError("range low bound must be non-negative")
        if self.hi != UNBOUNDED_HI and self.hi < self.lo:
            raise ValueError("range high bound must be -1 or at least the low bound")

    @property
    def unbounded(self) -> bool:
        return self.hi == UNBOUNDED_HI


@dataclass(frozen=True)
class CountStep:
    """Single-row count of bound ``counted`` values, written to column ``alias``"""
    counted: str
    alias: str


@dataclass(frozen=True)
class GroupCount:
    keys: tuple[str, ...]
    counted: str
    alias: str

    def __post_init__(self):
        object.__setattr__(self, "keys", tuple(self.keys))
        if not self.keys:
            raise ValueError("groupCount() needs at least one key")


Step = Union[
    V, Match, UnionStep, As, Out, Values, Label, Has, HasLabel, HasId, Where,
    Coalesce, Constant, Select, Dedup, Order, Range, CountStep, GroupCount,
]

# Steps that read the current element and therefore need a vertex there
VERTEX_STEPS = (Out, Values, Label, Has, HasLabel, HasId)


def walk(traversal: Traversal):
    """Yield every step, descending into nested traversals"""
    for step in traversal.steps:
        yield step
        for nested in getattr(step, "traversals", ()):
            yield from walk(nested)
