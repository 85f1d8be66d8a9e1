"""
Abstract syntax tree for the supported SPARQL SELECT subset

All nodes are frozen dataclasses so two parses of the same text compare equal
and a validated query can never be mutated behind the translator's back.
"""
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from ..core.comparison import CompareOp, Direction
from ..core.errors import SourcePosition
from ..core.prefixes import PrefixTable
from ..core.terms import Literal, Triple, Var


# Filter expressions

@dataclass(frozen=True)
class Comparison:
    lhs: Var
    op: CompareOp
    rhs: Union[Literal, Var]


@dataclass(frozen=True)
class And:
    left: "FilterExpr"
    right: "FilterExpr"


@dataclass(frozen=True)
class Or:
    left: "FilterExpr"
    right: "FilterExpr"


@dataclass(frozen=True)
class RegexCall:
    """REGEX(...) kept only so validation can reject it with its own code"""
    args: tuple[str, ...]
    position: Optional[SourcePosition] = field(default=None, compare=False)


FilterExpr = Union[Comparison, And, Or, RegexCall]


def iter_filter_nodes(expr: FilterExpr) -> Iterator[FilterExpr]:
    """Every node of ``expr`` in pre-order, without recursion"""
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)


def chain_operands(expr: FilterExpr, kind: type) -> list[FilterExpr]:
    """
    Operands of the left-leaning ``kind`` chain at ``expr``, left to right.

    ``a && b && c`` parses to ``And(And(a, b), c)``; long chains are walked
    iteratively. A right operand of the same kind (from parentheses) is
    returned as one operand.
    """
    operands = []
    while isinstance(expr, kind):
        operands.append(expr.right)
        expr = expr.left
    operands.append(expr)
    operands.reverse()
    return operands


def filter_variables(expr: FilterExpr) -> list[str]:
    names: list[str] = []
    for node in iter_filter_nodes(expr):
        if isinstance(node, Comparison):
            for term in (node.lhs, node.rhs):
                if isinstance(term, Var) and term.name not in names:
                    names.append(term.name)
    return names


# Graph patterns

@dataclass(frozen=True)
class TriplePattern:
    triple: Triple


@dataclass(frozen=True)
class Filter:
    expr: FilterExpr


@dataclass(frozen=True)
class OptionalPattern:
    group: "GroupPattern"


@dataclass(frozen=True)
class UnionPattern:
    left: "GroupPattern"
    right: "GroupPattern"


PatternElement = Union[TriplePattern, Filter, OptionalPattern, UnionPattern]


@dataclass(frozen=True)
class GroupPattern:
    elements: tuple[PatternElement, ...] = ()

    def required_triples(self) -> list[Triple]:
        return [e.triple for e in self.elements if isinstance(e, TriplePattern)]

    def filters(self) -> list[FilterExpr]:
        return [e.expr for e in self.elements if isinstance(e, Filter)]

    def optionals(self) -> list["GroupPattern"]:
        return [e.group for e in self.elements if isinstance(e, OptionalPattern)]

    def unions(self) -> list[UnionPattern]:
        return [e for e in self.elements if isinstance(e, UnionPattern)]

    def all_triples(self) -> list[Triple]:
        """Every triple pattern in source order, descending into OPTIONAL and UNION"""
        triples: list[Triple] = []
        for element in self.elements:
            if isinstance(element, TriplePattern):
                triples.append(element.triple)
            elif isinstance(element, OptionalPattern):
                triples.extend(element.group.all_triples())
            elif isinstance(element, UnionPattern):
                triples.extend(element.left.all_triples())
                triples.extend(element.right.all_triples())
        return triples

    def all_filters(self) -> list[FilterExpr]:
        exprs: list[FilterExpr] = []
        for element in self.elements:
            if isinstance(element, Filter):
                exprs.append(element.expr)
            elif isinstance(element, OptionalPattern):
                exprs.extend(element.group.all_filters())
            elif isinstance(element, UnionPattern):
                exprs.extend(element.left.all_filters())
                exprs.extend(element.right.all_filters())
        return exprs


def triple_variables(triples: list[Triple]) -> list[str]:
    names: list[str] = []
    for triple in triples:
        for name in triple.variables():
            if name not in names:
                names.append(name)
    return names


# Projection and modifiers

@dataclass(frozen=True)
class Star:
    """``SELECT *`` with its expansion"""
    variables: tuple[str, ...]


@dataclass(frozen=True)
class VarList:
    variables: tuple[str, ...]


@dataclass(frozen=True)
class CountAgg:
    """``SELECT ?k… (COUNT(?counted) AS ?alias)``; ``variables`` are the group keys"""
    variables: tuple[str, ...]
    counted: str
    alias: str


Projection = Union[Star, VarList, CountAgg]


@dataclass(frozen=True)
class OrderCondition:
    var: str
    direction: Direction = Direction.ASC


@dataclass(frozen=True)
class SelectQuery:
    projection: Projection
    where: GroupPattern
    prologue: PrefixTable = field(default_factory=PrefixTable)
    distinct: bool = False
    group_by: tuple[str, ...] = ()
    order_by: tuple[OrderCondition, ...] = ()
    limit: Optional[int] = None
    offset: Optional[int] = None

    @property
    def projected_variables(self) -> tuple[str, ...]:
        """Output columns in order (group keys then alias for COUNT)"""
        if isinstance(self.projection, CountAgg):
            return self.projection.variables + (self.projection.alias,)
        return self.projection.variables

    @property
    def has_slice(self) -> bool:
        return self.limit is not None or self.offset is not None


@dataclass(frozen=True)
class ValidatedQuery:
    """A SelectQuery that passed every translatability check"""
    query: SelectQuery
