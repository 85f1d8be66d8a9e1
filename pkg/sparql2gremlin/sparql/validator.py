"""
Translatability checks for parsed queries

``validate`` accepts a parsed query only if every construct in it has a
traversal counterpart. Checks run in a fixed order so a query breaking several
rules always reports the same code.
"""
import logging
from typing import Union

from ..core.errors import (
    AggregateAliasInUse,
    FilterVariableOutOfScope,
    InvalidGrouping,
    OrderVariableNotProjected,
    ProjectedVariableNotInPattern,
    UnionVariableNotBound,
    UnsupportedMultipleUnion,
    UnsupportedOptionalPattern,
    UnsupportedRegex,
    UnsupportedVariablePredicate,
)
from ..core.prefixes import EDGE_NS, LABEL_PREDICATE, VERTEX_PROPERTY_NS
from ..core.terms import Iri, Var
from .ast import (
    CountAgg,
    GroupPattern,
    RegexCall,
    SelectQuery,
    Star,
    ValidatedQuery,
    filter_variables,
    iter_filter_nodes,
    triple_variables,
)

logger = logging.getLogger(__name__)


def validate(query: Union[SelectQuery, ValidatedQuery]) -> ValidatedQuery:
    """Check ``query`` against the translatable subset; idempotent"""
    if isinstance(query, ValidatedQuery):
        query = query.query

    _check_predicates(query)
    _check_regex(query)
    _check_order(query)
    _check_grouping(query)
    _check_projection_bound(query)
    _check_union(query)
    _check_optionals(query)
    _check_filter_scope(query)
    _check_alias(query)

    logger.debug("query validated: %d triple pattern(s)", len(query.where.all_triples()))
    return ValidatedQuery(query)


def _check_predicates(query: SelectQuery) -> None:
    for triple in query.where.all_triples():
        if isinstance(triple.p, Var):
            raise UnsupportedVariablePredicate(
                f"variable ?{triple.p.name} in predicate position; predicates must be "
                f"{VERTEX_PROPERTY_NS}… or {EDGE_NS}… IRIs"
            )


def _check_regex(query: SelectQuery) -> None:
    for expr in query.where.all_filters():
        for node in iter_filter_nodes(expr):
            if isinstance(node, RegexCall):
                raise UnsupportedRegex("REGEX in FILTER is not supported", node.position)


def _check_order(query: SelectQuery) -> None:
    projected = set(query.projected_variables)
    for condition in query.order_by:
        if condition.var not in projected:
            raise OrderVariableNotProjected(f"ORDER BY variable ?{condition.var} is not projected")


def _check_grouping(query: SelectQuery) -> None:
    projection = query.projection
    keys = set(query.group_by)
    if len(keys) != len(query.group_by):
        raise InvalidGrouping("GROUP BY lists a variable twice")

    if isinstance(projection, CountAgg):
        if projection.variables and keys != set(projection.variables):
            raise InvalidGrouping("COUNT with projected keys requires GROUP BY over exactly those keys")
        if not projection.variables and keys:
            raise InvalidGrouping("GROUP BY variables must be projected next to COUNT")
        return

    if not keys:
        return
    if isinstance(projection, Star):
        raise InvalidGrouping("SELECT * cannot be combined with GROUP BY")
    if set(projection.variables) != keys:
        raise InvalidGrouping("with GROUP BY the projection must be exactly the group keys")


def _check_projection_bound(query: SelectQuery) -> None:
    pattern_vars = set(triple_variables(query.where.all_triples()))
    needed = list(query.projection.variables)
    if isinstance(query.projection, CountAgg):
        needed.append(query.projection.counted)
    for name in needed:
        if name not in pattern_vars:
            raise ProjectedVariableNotInPattern(f"?{name} does not occur in any triple pattern")


def _check_union(query: SelectQuery) -> None:
    unions = query.where.unions()
    if len(unions) > 1:
        raise UnsupportedMultipleUnion("at most one UNION per query is supported")
    if not unions:
        return

    needed = list(query.projection.variables)
    if isinstance(query.projection, CountAgg):
        needed.append(query.projection.counted)
    top = set(triple_variables(query.where.required_triples()))
    for optional in query.where.optionals():
        top |= set(triple_variables(optional.required_triples()))
    for side, branch in (("left", unions[0].left), ("right", unions[0].right)):
        bound = top | set(triple_variables(branch.required_triples()))
        for name in needed:
            if name not in bound:
                raise UnionVariableNotBound(f"?{name} is not bound by the {side} UNION branch")


def _check_optionals(query: SelectQuery) -> None:
    where = query.where
    required_vars = set(triple_variables(where.required_triples()))
    unions = where.unions()
    if unions:
        left = set(triple_variables(unions[0].left.required_triples()))
        right = set(triple_variables(unions[0].right.required_triples()))
        required_vars |= left & right

    for index, optional in enumerate(where.optionals()):
        triples = optional.required_triples()
        if len(triples) != 1:
            raise UnsupportedOptionalPattern("an OPTIONAL body must hold exactly one triple pattern")
        triple = triples[0]
        if not isinstance(triple.s, Var) or not isinstance(triple.o, Var):
            raise UnsupportedOptionalPattern("OPTIONAL triples need a variable subject and object")
        if not isinstance(triple.p, Iri) or not _optional_predicate(triple.p):
            raise UnsupportedOptionalPattern(
                "OPTIONAL triples must read a vertex property, the label or an edge")
        if triple.s.name not in required_vars:
            raise UnsupportedOptionalPattern(
                f"OPTIONAL subject ?{triple.s.name} must be bound by a required triple pattern")
        if triple.o.name == triple.s.name:
            raise UnsupportedOptionalPattern("OPTIONAL subject and object must differ")

        elsewhere = _triples_outside_optional(where, index)
        if triple.o.name in triple_variables(elsewhere):
            raise UnsupportedOptionalPattern(
                f"OPTIONAL object ?{triple.o.name} may not occur in another triple pattern")


def _optional_predicate(predicate: Iri) -> bool:
    value = predicate.value
    if predicate == LABEL_PREDICATE:
        return True
    return (value.startswith(VERTEX_PROPERTY_NS) and len(value) > len(VERTEX_PROPERTY_NS)) or (
        value.startswith(EDGE_NS) and len(value) > len(EDGE_NS))


def _triples_outside_optional(where: GroupPattern, skip: int):
    triples = list(where.required_triples())
    for union in where.unions():
        triples += union.left.required_triples() + union.right.required_triples()
    for index, optional in enumerate(where.optionals()):
        if index != skip:
            triples += optional.required_triples()
    return triples


def _check_filter_scope(query: SelectQuery) -> None:
    for union in query.where.unions():
        for side, branch in (("left", union.left), ("right", union.right)):
            scope = set(triple_variables(branch.required_triples()))
            for expr in branch.filters():
                for name in filter_variables(expr):
                    if name not in scope:
                        raise FilterVariableOutOfScope(
                            f"FILTER in the {side} UNION branch uses ?{name}, "
                            f"which that branch does not bind")


def _check_alias(query: SelectQuery) -> None:
    if not isinstance(query.projection, CountAgg):
        return
    alias = query.projection.alias
    if alias in triple_variables(query.where.all_triples()):
        raise AggregateAliasInUse(f"COUNT alias ?{alias} already occurs in the pattern")
    for expr in query.where.all_filters():
        if alias in filter_variables(expr):
            raise AggregateAliasInUse(f"COUNT alias ?{alias} is used in a FILTER")
