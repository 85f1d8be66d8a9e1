"""
Built-in step handlers

Vertex steps (``out``, ``values``, ``label``, ``has*``) need a vertex as the
current element. Inside a match pattern anything else simply drops the
traverser; outside a pattern it means the traversal is malformed.
"""
from collections import Counter
from typing import TYPE_CHECKING, Iterator, Optional

from ..core.comparison import Direction, canonical, compare_values, sort_key, values_equal
from ..core.errors import MalformedTraversal
from ..core.graph import Vertex
from ..core.terms import Literal, UnboundType, Value, VertexRef
from ..gremlin.steps import (
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
    Predicate,
    Range,
    Select,
    Traversal,
    UnionStep,
    V,
    Values,
    VarRef,
    Where,
)
from .registry import register_step
from .traverser import BRANCH, PATTERN, Scope, Traverser

if TYPE_CHECKING:
    from .evaluator import Evaluation


def _vertex(traverser: Traverser, evaluation: "Evaluation", scope: Scope, step_name: str) -> Optional[Vertex]:
    current = traverser.current
    if isinstance(current, VertexRef):
        return evaluation.graph.vertex(current.id)
    if scope.in_pattern:
        return None
    raise MalformedTraversal(f"{step_name}() needs a vertex, found {current!r}")


@register_step(V)
def handle_v(step: V, traversers, evaluation: "Evaluation", scope: Scope):
    return [t.moved(VertexRef(v.id)) for t in traversers for v in evaluation.graph.iter_vertices()]


# Match

def _solve(patterns: tuple[Traversal, ...], index: int, traverser: Traverser,
           evaluation: "Evaluation") -> Iterator[Traverser]:
    if index == len(patterns):
        yield traverser
        return

    pattern = patterns[index]
    start = pattern.steps[0] if pattern.steps else None
    if not isinstance(start, As):
        raise MalformedTraversal("every match() pattern must start with as()")

    name = start.name
    if name in traverser.bindings:
        starts = [traverser.moved(traverser.bindings[name])]
    elif index == 0 and traverser.current is not None:
        starts = [traverser.bind(name, traverser.current)]
    else:
        starts = []
        for vertex in evaluation.graph.iter_vertices():
            ref = VertexRef(vertex.id)
            starts.append(traverser.bind(name, ref).moved(ref))

    rest = Traversal(pattern.steps[1:])
    for begin in starts:
        for solved in evaluation.run(rest, [begin], PATTERN):
            yield from _solve(patterns, index + 1, solved, evaluation)


@register_step(Match)
def handle_match(step: Match, traversers, evaluation: "Evaluation", scope: Scope):
    if scope.in_pattern:
        raise MalformedTraversal("match() cannot be nested inside a match pattern")
    results = []
    for traverser in traversers:
        for solved in _solve(step.traversals, 0, traverser, evaluation):
            results.append(solved.moved(traverser.current))
    return results


@register_step(UnionStep)
def handle_union(step: UnionStep, traversers, evaluation: "Evaluation", scope: Scope):
    if scope.in_pattern:
        raise MalformedTraversal("union() cannot be nested inside a match pattern")
    results = []
    for branch in step.traversals:
        results.extend(evaluation.run(branch, list(traversers), BRANCH))
    return results


@register_step(Coalesce)
def handle_coalesce(step: Coalesce, traversers, evaluation: "Evaluation", scope: Scope):
    results = []
    for traverser in traversers:
        for branch in step.traversals:
            produced = evaluation.run(branch, [traverser], scope)
            if produced:
                results.extend(produced)
                break
    return results


@register_step(Constant)
def handle_constant(step: Constant, traversers, evaluation: "Evaluation", scope: Scope):
    return [t.moved(step.value) for t in traversers]


# Element steps

@register_step(As)
def handle_as(step: As, traversers, evaluation: "Evaluation", scope: Scope):
    results = []
    for traverser in traversers:
        if traverser.current is None:
            raise MalformedTraversal(f"as('{step.name}') has no current element to label")
        if step.name in traverser.bindings:
            if values_equal(traverser.bindings[step.name], traverser.current):
                results.append(traverser)
        else:
            results.append(traverser.bind(step.name, traverser.current))
    return results


@register_step(Out)
def handle_out(step: Out, traversers, evaluation: "Evaluation", scope: Scope):
    results = []
    for traverser in traversers:
        vertex = _vertex(traverser, evaluation, scope, "out")
        if vertex is None:
            continue
        for edge in evaluation.graph.out_edges(vertex.id, step.label):
            results.append(traverser.moved(VertexRef(edge.target)))
    return results


@register_step(Values)
def handle_values(step: Values, traversers, evaluation: "Evaluation", scope: Scope):
    results = []
    for traverser in traversers:
        vertex = _vertex(traverser, evaluation, scope, "values")
        if vertex is not None and step.key in vertex.properties:
            results.append(traverser.moved(vertex.properties[step.key]))
    return results


@register_step(Label)
def handle_label(step: Label, traversers, evaluation: "Evaluation", scope: Scope):
    results = []
    for traverser in traversers:
        vertex = _vertex(traverser, evaluation, scope, "label")
        if vertex is not None:
            results.append(traverser.moved(Literal.string(vertex.label)))
    return results


@register_step(Has)
def handle_has(step: Has, traversers, evaluation: "Evaluation", scope: Scope):
    results = []
    for traverser in traversers:
        vertex = _vertex(traverser, evaluation, scope, "has")
        if vertex is None or step.key not in vertex.properties:
            continue
        if compare_values(vertex.properties[step.key], step.pred.op, step.pred.value):
            results.append(traverser)
    return results


@register_step(HasLabel)
def handle_has_label(step: HasLabel, traversers, evaluation: "Evaluation", scope: Scope):
    results = []
    for traverser in traversers:
        vertex = _vertex(traverser, evaluation, scope, "hasLabel")
        if vertex is not None and values_equal(Literal.string(vertex.label), step.value):
            results.append(traverser)
    return results


@register_step(HasId)
def handle_has_id(step: HasId, traversers, evaluation: "Evaluation", scope: Scope):
    results = []
    for traverser in traversers:
        vertex = _vertex(traverser, evaluation, scope, "hasId")
        if vertex is not None and vertex.id == step.id:
            results.append(traverser)
    return results


# Filters

def _holds(pred: Predicate, value: Value, traverser: Traverser) -> bool:
    if isinstance(pred, OrPred):
        return any(_holds(p, value, traverser) for p in pred.preds)
    rhs = traverser.lookup(pred.value.name) if isinstance(pred.value, VarRef) else pred.value
    return compare_values(value, pred.op, rhs)


@register_step(Where)
def handle_where(step: Where, traversers, evaluation: "Evaluation", scope: Scope):
    return [t for t in traversers if _holds(step.pred, t.lookup(step.var), t)]


# Row steps

def _row(traverser: Traverser, evaluation: "Evaluation") -> tuple:
    if evaluation.columns is not None:
        return tuple(canonical(traverser.lookup(name)) for name in evaluation.columns)
    items = tuple(sorted((k, canonical(v)) for k, v in traverser.bindings.items()))
    return items + (canonical(traverser.current),)


@register_step(Select)
def handle_select(step: Select, traversers, evaluation: "Evaluation", scope: Scope):
    evaluation.columns = step.names
    return [Traverser({name: t.lookup(name) for name in step.names}) for t in traversers]


@register_step(Dedup)
def handle_dedup(step: Dedup, traversers, evaluation: "Evaluation", scope: Scope):
    seen = set()
    results = []
    for traverser in traversers:
        key = _row(traverser, evaluation)
        if key not in seen:
            seen.add(key)
            results.append(traverser)
    return results


@register_step(Order)
def handle_order(step: Order, traversers, evaluation: "Evaluation", scope: Scope):
    ordered = list(traversers)
    for name, direction in reversed(step.keys):
        ordered.sort(key=lambda t: sort_key(t.lookup(name)), reverse=direction is Direction.DESC)
    evaluation.ordered = True
    return ordered


@register_step(Range)
def handle_range(step: Range, traversers, evaluation: "Evaluation", scope: Scope):
    if step.unbounded:
        return list(traversers[step.lo:])
    return list(traversers[step.lo:step.hi])


def _is_bound(value: Value) -> bool:
    return not isinstance(value, UnboundType)


@register_step(CountStep)
def handle_count(step: CountStep, traversers, evaluation: "Evaluation", scope: Scope):
    count = sum(1 for t in traversers if _is_bound(t.lookup(step.counted)))
    evaluation.columns = (step.alias,)
    evaluation.ordered = False
    return [Traverser({step.alias: Literal.integer(count)})]


@register_step(GroupCount)
def handle_group_count(step: GroupCount, traversers, evaluation: "Evaluation", scope: Scope):
    groups: dict[tuple, tuple] = {}
    counts: Counter = Counter()
    for traverser in traversers:
        values = tuple(traverser.lookup(k) for k in step.keys)
        key = tuple(canonical(v) for v in values)
        groups.setdefault(key, values)
        if _is_bound(traverser.lookup(step.counted)):
            counts[key] += 1
    evaluation.columns = step.keys + (step.alias,)
    evaluation.ordered = False
    results = []
    for key, values in groups.items():
        bindings = dict(zip(step.keys, values))
        bindings[step.alias] = Literal.integer(counts[key])
        results.append(Traverser(bindings))
    return results

