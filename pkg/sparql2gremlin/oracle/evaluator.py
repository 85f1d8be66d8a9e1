"""
Reference SPARQL evaluator over a triple list

Nested loops and full materialization throughout. Evaluation order:

1. join the top-level triple patterns
2. with a UNION, per branch: join the branch triples, then apply the
   branch filters; the branch results are appended left then right
3. left-join each OPTIONAL triple
4. apply top-level filters
5. group and count, project, DISTINCT, ORDER BY (stable), OFFSET/LIMIT

Solutions come out in data order, pattern by pattern. Over the
subject-major RDF view that is the traversal engine's order, so sliced
results compare exactly.
"""
import logging
from typing import Iterable, Optional, Sequence, Union

from ..core.comparison import canonical, compare_values, sort_rows, values_equal
from ..core.solutions import SolutionTable
from ..core.terms import UNBOUND, Literal, Term, Triple, Value, Var
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
    triple_variables,
)
from ..sparql.validator import validate

logger = logging.getLogger(__name__)

Solution = dict[str, Value]


def _extend(pattern: Triple, fact: Triple, solution: Solution) -> Optional[Solution]:
    extended = dict(solution)
    for term, value in ((pattern.s, fact.s), (pattern.p, fact.p), (pattern.o, fact.o)):
        if isinstance(term, Var):
            bound = extended.get(term.name)
            if bound is None:
                extended[term.name] = value
            elif not values_equal(bound, value):
                return None
        elif not values_equal(term, value):
            return None
    return extended


def _join_patterns(patterns: Sequence[Triple], data: Sequence[Triple],
                   solutions: list[Solution]) -> list[Solution]:
    for pattern in patterns:
        solutions = [
            extended
            for solution in solutions
            for fact in data
            if (extended := _extend(pattern, fact, solution)) is not None
        ]
    return solutions


def _as_triples(patterns: Iterable[Union[TriplePattern, Triple]]) -> list[Triple]:
    return [p.triple if isinstance(p, TriplePattern) else p for p in patterns]


def bgp_join(patterns: Iterable[Union[TriplePattern, Triple]], data: Iterable[Triple]) -> SolutionTable:
    """All assignments of the pattern variables consistent with ``data``"""
    triples = _as_triples(patterns)
    solutions = _join_patterns(triples, list(data), [{}])
    columns = tuple(triple_variables(triples))
    return SolutionTable(columns, [tuple(s[c] for c in columns) for s in solutions])


def _left_join(solutions: list[Solution], pattern: Triple, data: Sequence[Triple]) -> list[Solution]:
    result = []
    for solution in solutions:
        matches = _join_patterns([pattern], data, [solution])
        result.extend(matches if matches else [solution])
    return result


def _term_value(term: Term, solution: Solution) -> Value:
    if isinstance(term, Var):
        return solution.get(term.name, UNBOUND)
    return term


def filter_holds(expr: FilterExpr, solution: Solution) -> bool:
    if isinstance(expr, Comparison):
        return compare_values(_term_value(expr.lhs, solution), expr.op, _term_value(expr.rhs, solution))
    if isinstance(expr, And):
        return all(filter_holds(operand, solution) for operand in chain_operands(expr, And))
    if isinstance(expr, Or):
        return any(filter_holds(operand, solution) for operand in chain_operands(expr, Or))
    if isinstance(expr, RegexCall):
        raise ValueError("REGEX filters are rejected by validation")
    raise TypeError(f"unknown filter expression {expr!r}")


def _filtered(solutions: list[Solution], filters: list[FilterExpr]) -> list[Solution]:
    return [s for s in solutions if all(filter_holds(f, s) for f in filters)]


def _dedup(rows: list[tuple]) -> list[tuple]:
    seen = set()
    unique = []
    for row in rows:
        key = tuple(canonical(v) for v in row)
        if key not in seen:
            seen.add(key)
            unique.append(row)
    return unique


def _aggregate(query: SelectQuery, solutions: list[Solution]) -> tuple[tuple[str, ...], list[tuple]]:
    projection = query.projection
    if not isinstance(projection, CountAgg):
        columns = tuple(projection.variables)
        return columns, [tuple(s.get(c, UNBOUND) for c in columns) for s in solutions]

    keys = projection.variables
    columns = keys + (projection.alias,)
    if not keys:
        count = sum(1 for s in solutions if projection.counted in s)
        return columns, [(Literal.integer(count),)]

    groups: dict[tuple, list] = {}
    for solution in solutions:
        values = tuple(solution.get(k, UNBOUND) for k in keys)
        entry = groups.setdefault(tuple(canonical(v) for v in values), [values, 0])
        if projection.counted in solution:
            entry[1] += 1
    return columns, [values + (Literal.integer(count),) for values, count in groups.values()]


def eval_sparql(query: Union[ValidatedQuery, SelectQuery], data: Iterable[Triple]) -> SolutionTable:
    """Evaluate ``query`` over ``data`` with multiset semantics"""
    q = validate(query).query
    data = list(data)
    where = q.where

    required = where.required_triples()
    unions = where.unions()
    if unions:
        # the join distributes over the union; each branch joins the required triples first
        solutions = []
        for branch in (unions[0].left, unions[0].right):
            matched = _join_patterns(required + branch.required_triples(), data, [{}])
            solutions.extend(_filtered(matched, branch.filters()))
    else:
        solutions = _join_patterns(required, data, [{}])
    for optional in where.optionals():
        solutions = _left_join(solutions, optional.required_triples()[0], data)
    solutions = _filtered(solutions, where.filters())
    logger.debug("oracle matched %d solution(s) before modifiers", len(solutions))

    columns, rows = _aggregate(q, solutions)
    if q.distinct or (q.group_by and not isinstance(q.projection, CountAgg)):
        rows = _dedup(rows)
    if q.order_by:
        rows = sort_rows(rows, [(columns.index(c.var), c.direction) for c in q.order_by])
    if q.has_slice:
        lo = q.offset or 0
        rows = rows[lo:] if q.limit is None else rows[lo:lo + q.limit]
    return SolutionTable(columns, rows, ordered=bool(q.order_by))
