"""
SPARQL AST to traversal translation

Each triple pattern becomes a single-step traversal (SST) that starts with the
``as()`` label of its subject; the query becomes
``V().match(SSTs).where(...)`` followed by the solution modifiers:

    V · Match · Where* · (GroupCount | CountStep | Select)? · Dedup? · Order? · Range?

With a UNION, required triples and OPTIONALs are copied into both branches:
``V().union(__.match(...).where(...), __.match(...).where(...))``.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Union

from ..core.comparison import CompareOp
from ..core.errors import (
    IllTypedPattern,
    UnknownPredicateNamespace,
    UnsupportedDisjunction,
    UnsupportedRegex,
)
from ..core.prefixes import EDGE_NS, LABEL_KEY, VERTEX_PROPERTY_NS, vertex_id_of
from ..core.terms import UNBOUND, Iri, Literal, Triple, Var
from ..gremlin.steps import (
    UNBOUNDED_HI,
    As,
    Coalesce,
    Constant,
    CountStep,
    Dedup,
    GroupCount,
    Has,
    HasId,
    HasLabel,
    Label,
    Match,
    Order,
    OrPred,
    Out,
    Pred,
    Range,
    Select,
    Step,
    Traversal,
    UnionStep,
    V,
    Values,
    VarRef,
    Where,
)
from ..sparql.ast import (
    And,
    Comparison,
    CountAgg,
    FilterExpr,
    Or,
    RegexCall,
    SelectQuery,
    TriplePattern,
    ValidatedQuery,
    chain_operands,
)
from ..sparql.validator import validate

logger = logging.getLogger(__name__)

FRESH_PREFIX = "_v"


# Predicate classification

@dataclass(frozen=True)
class VertexProp:
    key: str


@dataclass(frozen=True)
class VertexLabel:
    pass


@dataclass(frozen=True)
class EdgeLabel:
    label: str


PredicateKind = Union[VertexProp, VertexLabel, EdgeLabel]


def classify_predicate(predicate: Iri) -> PredicateKind:
    value = predicate.value
    if value.startswith(VERTEX_PROPERTY_NS) and len(value) > len(VERTEX_PROPERTY_NS):
        key = value[len(VERTEX_PROPERTY_NS):]
        return VertexLabel() if key == LABEL_KEY else VertexProp(key)
    if value.startswith(EDGE_NS) and len(value) > len(EDGE_NS):
        return EdgeLabel(value[len(EDGE_NS):])
    raise UnknownPredicateNamespace(
        f"predicate {predicate} is outside the {VERTEX_PROPERTY_NS} and {EDGE_NS} namespaces")


class FreshVars:
    """Generates ``_v0``, ``_v1``, … in the order they are requested"""

    def __init__(self):
        self.count = 0

    def next(self) -> str:
        name = f"{FRESH_PREFIX}{self.count}"
        self.count += 1
        return name


# Triple patterns

def _vertex_id(term: Iri, role: str, triple: Triple) -> str:
    vertex_id = vertex_id_of(term)
    if vertex_id is None:
        raise IllTypedPattern(f"{role} {term} of {_show(triple)} is not a vertex IRI")
    return vertex_id


def _show(triple: Triple) -> str:
    return " ".join(str(t) for t in (triple.s, triple.p, triple.o))


def _subject_steps(triple: Triple, fresh: FreshVars) -> list[Step]:
    if isinstance(triple.s, Var):
        return [As(triple.s.name)]
    if isinstance(triple.s, Iri):
        return [As(fresh.next()), HasId(_vertex_id(triple.s, "subject", triple))]
    raise IllTypedPattern(f"subject of {_show(triple)} must be a variable or a vertex IRI")


def _object_steps(triple: Triple, kind: PredicateKind) -> list[Step]:
    obj = triple.o
    if isinstance(kind, VertexProp):
        if isinstance(obj, Var):
            return [Values(kind.key), As(obj.name)]
        if isinstance(obj, Literal):
            return [Has(kind.key, Pred(CompareOp.EQ, obj))]
        raise IllTypedPattern(f"vertex property {kind.key} of {_show(triple)} cannot hold an IRI")
    if isinstance(kind, VertexLabel):
        if isinstance(obj, Var):
            return [Label(), As(obj.name)]
        if isinstance(obj, Literal):
            return [HasLabel(obj)]
        raise IllTypedPattern(f"vertex label of {_show(triple)} cannot be an IRI")
    if isinstance(obj, Var):
        return [Out(kind.label), As(obj.name)]
    if isinstance(obj, Iri):
        return [Out(kind.label), HasId(_vertex_id(obj, "object", triple))]
    raise IllTypedPattern(f"edge {kind.label} of {_show(triple)} must point at a vertex, not a literal")


def _predicate_of(triple: Triple) -> PredicateKind:
    if not isinstance(triple.p, Iri):
        raise IllTypedPattern(f"predicate of {_show(triple)} must be an IRI")
    return classify_predicate(triple.p)


def translate_bgp(pattern: Union[TriplePattern, Triple], fresh: Optional[FreshVars] = None) -> Traversal:
    """Single-step traversal for one triple pattern"""
    triple = pattern.triple if isinstance(pattern, TriplePattern) else pattern
    fresh = fresh or FreshVars()
    kind = _predicate_of(triple)
    subject = _subject_steps(triple, fresh)
    return Traversal(tuple(subject + _object_steps(triple, kind)))


def translate_optional(triple: Triple) -> Traversal:
    """``as(s).coalesce(__.<body>, __.constant(unbound)).as(o)`` for an OPTIONAL triple"""
    kind = _predicate_of(triple)
    if not isinstance(triple.s, Var) or not isinstance(triple.o, Var):
        raise IllTypedPattern(f"OPTIONAL triple {_show(triple)} needs a variable subject and object")
    body = _object_steps(triple, kind)[:-1]
    return Traversal((
        As(triple.s.name),
        Coalesce((Traversal(tuple(body)), Traversal((Constant(UNBOUND),)))),
        As(triple.o.name),
    ))


# Filters

def _leaves(expr: FilterExpr) -> list[FilterExpr]:
    leaves = []
    for operand in chain_operands(expr, Or):
        leaves.extend(_leaves(operand) if isinstance(operand, Or) else [operand])
    return leaves


def translate_filter(expr: FilterExpr) -> list[Where]:
    if isinstance(expr, Comparison):
        rhs = VarRef(expr.rhs.name) if isinstance(expr.rhs, Var) else expr.rhs
        return [Where(expr.lhs.name, Pred(expr.op, rhs))]
    if isinstance(expr, And):
        return [where for operand in chain_operands(expr, And) for where in translate_filter(operand)]
    if isinstance(expr, Or):
        leaves = _leaves(expr)
        if not all(isinstance(leaf, Comparison) for leaf in leaves):
            raise UnsupportedDisjunction("'||' may only join plain comparisons")
        names = {leaf.lhs.name for leaf in leaves}
        if len(names) != 1:
            raise UnsupportedDisjunction(
                f"'||' must compare a single variable, found {', '.join('?' + n for n in sorted(names))}")
        if any(isinstance(leaf.rhs, Var) for leaf in leaves):
            raise UnsupportedDisjunction("'||' comparisons must compare against literals")
        return [Where(names.pop(), OrPred(tuple(Pred(leaf.op, leaf.rhs) for leaf in leaves)))]
    if isinstance(expr, RegexCall):
        raise UnsupportedRegex("REGEX in FILTER is not supported", expr.position)
    raise TypeError(f"unknown filter expression {expr!r}")


def _wheres(filters: list[FilterExpr]) -> list[Step]:
    return [where for expr in filters for where in translate_filter(expr)]


# Queries

def translate_query(query: Union[ValidatedQuery, SelectQuery]) -> Traversal:
    """Compose the full traversal for a validated query"""
    q = validate(query).query
    fresh = FreshVars()
    where = q.where

    required = [translate_bgp(t, fresh) for t in where.required_triples()]
    unions = where.unions()
    branch_ssts = [[translate_bgp(t, fresh) for t in branch.required_triples()]
                   for union in unions for branch in (union.left, union.right)]
    optionals = [translate_optional(o.required_triples()[0]) for o in where.optionals()]

    steps: list[Step] = [V()]
    if unions:
        union = unions[0]
        branches = []
        for ssts, branch in zip(branch_ssts, (union.left, union.right)):
            match = Match(tuple(required + ssts + optionals))
            branches.append(Traversal((match, *_wheres(branch.filters()))))
        steps.append(UnionStep(tuple(branches)))
    else:
        steps.append(Match(tuple(required + optionals)))

    steps += _wheres(where.filters())

    projection = q.projection
    if isinstance(projection, CountAgg):
        if projection.variables:
            steps.append(GroupCount(projection.variables, projection.counted, projection.alias))
        else:
            steps.append(CountStep(projection.counted, projection.alias))
    elif projection.variables:
        steps.append(Select(projection.variables))

    if q.distinct or (q.group_by and not isinstance(projection, CountAgg)):
        steps.append(Dedup())
    if q.order_by:
        steps.append(Order(tuple((c.var, c.direction) for c in q.order_by)))
    if q.has_slice:
        lo = q.offset or 0
        hi = UNBOUNDED_HI if q.limit is None else lo + q.limit
        steps.append(Range(lo, hi))

    traversal = Traversal(tuple(steps))
    logger.debug("translated query into %d top-level step(s), %d fresh variable(s)",
                 len(traversal), fresh.count)
    return traversal
