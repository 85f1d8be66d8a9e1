"""
Seeded random graphs and queries for differential testing

Every iteration draws from its own ``random.Random`` keyed by the seed and the
iteration index, so iteration ``i`` of a run is reproducible on its own and
reports are byte-identical for equal arguments. Queries follow the ten
feature classes of the bundled corpus and iterations cycle through them.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..core.graph import Edge, PropertyGraph, Vertex
from ..core.terms import Literal
from ..engine.loader import dump_graph
from ..fixtures import FEATURE_CLASSES
from .state import CheckOutcome, ClassTally
from .runtime import DifferentialRuntime

logger = logging.getLogger(__name__)

VERTEX_LABELS = ("person", "product", "vendor")
PROPERTY_KEYS = ("name", "age", "score", "active")
EDGE_LABELS = ("knows", "likes", "offers")
NAMES = ("ann", "bob", "cy", "dee")
SCORES = (1.0, 1.5, 2.0, 2.5, 3.0)

COMPARISON_OPS = ("=", "!=", "<", ">", "<=", ">=")


# Graphs

def _property_value(key: str, rng: random.Random) -> Literal:
    if key == "name":
        return Literal.string(rng.choice(NAMES))
    if key == "age":
        return Literal.integer(rng.randint(18, 24))
    if key == "score":
        # Mixed kinds so that Integer/Double equality gets exercised
        if rng.random() < 0.4:
            return Literal.integer(rng.randint(1, 3))
        return Literal.double(rng.choice(SCORES))
    return Literal.boolean(rng.random() < 0.5)


def random_graph(rng: random.Random, max_vertices: int) -> PropertyGraph:
    """At most ``max_vertices`` vertices and twice as many edges"""
    count = rng.randint(1, max_vertices)
    vertices = []
    for index in range(count):
        properties = {key: _property_value(key, rng) for key in PROPERTY_KEYS if rng.random() < 0.7}
        vertices.append(Vertex(str(index), rng.choice(VERTEX_LABELS), properties))
    edges = [
        Edge(f"e{index}", rng.choice(EDGE_LABELS), str(rng.randrange(count)), str(rng.randrange(count)))
        for index in range(rng.randint(0, 2 * count))
    ]
    return PropertyGraph(vertices, edges)


# Queries

def _literal_text(key: str, rng: random.Random) -> str:
    if key == "label":
        return f'"{rng.choice(VERTEX_LABELS)}"'
    value = _property_value(key, rng)
    return f'"{value.value}"' if key == "name" else value.lexical()


class QueryBuilder:
    """Grows a connected basic graph pattern and remembers what each variable holds"""

    def __init__(self, rng: random.Random, max_vertices: int):
        self.rng = rng
        self.max_vertices = max_vertices
        self.vertex_vars: list[str] = []
        self.value_vars: dict[str, str] = {}  # var -> property key or "label"
        self._counter = 0

    def fresh(self, prefix: str) -> str:
        name = f"{prefix}{self._counter}"
        self._counter += 1
        return name

    @property
    def variables(self) -> list[str]:
        return self.vertex_vars + list(self.value_vars)

    def vertex_iri(self) -> str:
        return f"<urn:pg:v:{self.rng.randrange(self.max_vertices + 1)}>"

    def subject(self) -> str:
        if self.vertex_vars and self.rng.random() < 0.05:
            return self.vertex_iri()
        if not self.vertex_vars:
            self.vertex_vars.append(self.fresh("s"))
        return "?" + self.rng.choice(self.vertex_vars)

    def property_triple(self, subject: str, key: Optional[str] = None, literal: bool = False) -> str:
        rng = self.rng
        key = key or rng.choice(PROPERTY_KEYS)
        if literal:
            return f"{subject} v:{key} {_literal_text(key, rng)}"
        same_key = [v for v, k in self.value_vars.items() if k == key]
        if same_key and rng.random() < 0.15:
            return f"{subject} v:{key} ?{rng.choice(same_key)}"
        name = self.fresh("x")
        self.value_vars[name] = key
        return f"{subject} v:{key} ?{name}"

    def label_triple(self, subject: str) -> str:
        if self.rng.random() < 0.5:
            return f"{subject} v:label {_literal_text('label', self.rng)}"
        name = self.fresh("l")
        self.value_vars[name] = "label"
        return f"{subject} v:label ?{name}"

    def edge_triple(self, subject: str) -> str:
        rng = self.rng
        label = rng.choice(EDGE_LABELS)
        roll = rng.random()
        if roll < 0.1:
            return f"{subject} e:{label} {self.vertex_iri()}"
        if roll < 0.35 and self.vertex_vars:
            return f"{subject} e:{label} ?{rng.choice(self.vertex_vars)}"
        name = self.fresh("v")
        self.vertex_vars.append(name)
        return f"{subject} e:{label} ?{name}"

    def triple(self) -> str:
        subject = self.subject()
        roll = self.rng.random()
        if roll < 0.45:
            return self.property_triple(subject, literal=self.rng.random() < 0.2)
        if roll < 0.6:
            return self.label_triple(subject)
        return self.edge_triple(subject)

    def triples(self, low: int, high: int) -> list[str]:
        return [self.triple() for _ in range(self.rng.randint(low, high))]

    def value_triple(self) -> str:
        """A property triple with a variable object, so filters have something to test"""
        return self.property_triple(self.subject(), key=self.rng.choice(("name", "age", "score", "active")))

    def comparison(self, variables: Optional[list[str]] = None) -> Optional[str]:
        rng = self.rng
        candidates = [v for v in (variables if variables is not None else self.value_vars) if v in self.value_vars]
        if not candidates:
            return None
        var = rng.choice(candidates)
        roll = rng.random()
        if roll < 0.15 and len(candidates) > 1:
            other = rng.choice([v for v in candidates if v != var])
            return f"?{var} {rng.choice(COMPARISON_OPS)} ?{other}"
        if roll < 0.35:
            key = self.value_vars[var]
            first = f"?{var} {rng.choice(COMPARISON_OPS)} {_literal_text(key, rng)}"
            second = f"?{var} {rng.choice(COMPARISON_OPS)} {_literal_text(key, rng)}"
            return f"{first} || {second}"
        # Occasionally compare against a literal of another kind
        key = self.value_vars[var] if rng.random() < 0.85 else rng.choice(PROPERTY_KEYS)
        return f"?{var} {rng.choice(COMPARISON_OPS)} {_literal_text(key, rng)}"

    def filters(self, count: int, variables: Optional[list[str]] = None) -> list[str]:
        result = []
        for _ in range(count):
            expr = self.comparison(variables)
            if expr is None:
                break
            if self.rng.random() < 0.2:
                other = self.comparison(variables)
                if other is not None:
                    expr = f"{expr} && {other}" if "||" not in expr + other else f"({expr}) && ({other})"
            result.append(f"FILTER({expr})")
        return result

    def projection(self, variables: Optional[list[str]] = None) -> list[str]:
        pool = variables if variables is not None else self.variables
        size = self.rng.randint(1, min(3, len(pool)))
        chosen = set(self.rng.sample(pool, size))
        return [v for v in pool if v in chosen]

    def order_by(self, projected: list[str], total: bool) -> str:
        rng = self.rng
        keys = list(projected) if total else rng.sample(projected, rng.randint(1, len(projected)))
        if total:
            rng.shuffle(keys)
        parts = [f"{rng.choice(('ASC', 'DESC'))}(?{k})" if rng.random() < 0.6 else f"?{k}" for k in keys]
        return "ORDER BY " + " ".join(parts)

    def slice(self) -> str:
        rng = self.rng
        limit, offset = rng.randint(0, 4), rng.randint(0, 3)
        return rng.choice((f"LIMIT {limit}", f"OFFSET {offset}", f"LIMIT {limit} OFFSET {offset}",
                           f"OFFSET {offset} LIMIT {limit}"))


def _select(head: str, body: list[str], *modifiers: str, distinct: bool = False) -> str:
    lines = [f"SELECT {'DISTINCT ' if distinct else ''}{head} WHERE {{"]
    lines += [f"  {element}{' .' if not element.endswith('}') and not element.startswith('FILTER') else ''}"
              for element in body]
    lines.append("}")
    lines += [m for m in modifiers if m]
    return "\n".join(lines) + "\n"


def _head(variables: list[str]) -> str:
    return " ".join(f"?{v}" for v in variables)


def _query_c(b: QueryBuilder) -> str:
    body = b.triples(1, 4)
    head = "*" if b.rng.random() < 0.2 else _head(b.projection())
    return _select(head, body, distinct=b.rng.random() < 0.2)


def _query_f(b: QueryBuilder) -> str:
    body = [b.value_triple()] + b.triples(0, 2)
    body += b.filters(b.rng.randint(1, 2))
    return _select(_head(b.projection()), body)


def _query_l(b: QueryBuilder) -> str:
    body = b.triples(1, 3)
    projected = b.projection()
    order = b.order_by(projected, total=True) if b.rng.random() < 0.6 else ""
    return _select(_head(projected), body, order, b.slice(), distinct=b.rng.random() < 0.2)


def _query_g(b: QueryBuilder) -> str:
    body = b.triples(1, 3)
    keys = b.projection()
    order = b.order_by(keys, total=True) if b.rng.random() < 0.3 else ""
    return _select(_head(keys), body, "GROUP BY " + _head(keys), order)


def _query_gc(b: QueryBuilder) -> str:
    body = b.triples(1, 3)
    rng = b.rng
    keys = b.projection() if rng.random() < 0.7 else []
    counted = rng.choice(b.variables)
    head = f"{_head(keys)} (COUNT(?{counted}) AS ?cnt)".lstrip()
    group = "GROUP BY " + _head(keys) if keys else ""
    order = b.order_by(keys + ["cnt"], total=True) if keys and rng.random() < 0.3 else ""
    return _select(head, body, group, order)


def _query_o(b: QueryBuilder) -> str:
    body = b.triples(1, 3)
    projected = b.projection()
    return _select(_head(projected), body, b.order_by(projected, total=b.rng.random() < 0.5),
                   distinct=b.rng.random() < 0.2)


def _branch(b: QueryBuilder, subject: str, obj: str) -> list[str]:
    rng = b.rng
    roll = rng.random()
    if roll < 0.4:
        key = rng.choice(PROPERTY_KEYS)
        b.value_vars.setdefault(obj, key)
        triples = [f"?{subject} v:{key} ?{obj}"]
    elif roll < 0.55:
        triples = [f"?{subject} v:label ?{obj}"]
    else:
        triples = [f"?{subject} e:{rng.choice(EDGE_LABELS)} ?{obj}"]
    if rng.random() < 0.3:
        triples.append(f"?{subject} v:label {_literal_text('label', rng)}")
    if rng.random() < 0.3 and obj in b.value_vars:
        triples += b.filters(1, [obj])
    return triples


def _query_u(b: QueryBuilder) -> str:
    rng = b.rng
    subject, obj = "s", "o"
    b.vertex_vars.append(subject)
    body = []
    if rng.random() < 0.5:
        body.append(b.label_triple(f"?{subject}"))
    left, right = _branch(b, subject, obj), _branch(b, subject, obj)
    body.append(f"{{ {_group(left)} }} UNION {{ {_group(right)} }}")
    projected = [subject, obj] + [v for v in b.value_vars if v not in (obj,)]
    projected = b.projection(projected) if rng.random() < 0.5 else projected
    order = b.order_by(projected, total=True) if rng.random() < 0.3 else ""
    return _select(_head(projected), body, order, distinct=rng.random() < 0.2)


def _group(elements: list[str]) -> str:
    triples = [e for e in elements if not e.startswith("FILTER")]
    filters = [e for e in elements if e.startswith("FILTER")]
    return " ".join([" . ".join(triples) + " ."] + filters)


def _optional(b: QueryBuilder, subject: str) -> str:
    rng = b.rng
    obj = b.fresh("o")
    roll = rng.random()
    if roll < 0.5:
        predicate = f"v:{rng.choice(PROPERTY_KEYS)}"
    elif roll < 0.65:
        predicate = "v:label"
    else:
        predicate = f"e:{rng.choice(EDGE_LABELS)}"
    b.value_vars[obj] = predicate.split(":", 1)[1] if predicate.startswith("v:") else "name"
    return f"OPTIONAL {{ ?{subject} {predicate} ?{obj} }}"


def _query_op(b: QueryBuilder) -> str:
    body = b.triples(1, 2)
    subjects = list(b.vertex_vars)
    optionals = [_optional(b, b.rng.choice(subjects)) for _ in range(b.rng.randint(1, 2))]
    projected = b.projection()
    return _select(_head(projected), body + optionals)


def _query_m(b: QueryBuilder) -> str:
    rng = b.rng
    mix = rng.randrange(3)
    if mix == 0:
        body = [b.value_triple()] + b.triples(0, 2)
        subjects = list(b.vertex_vars)
        required_values = list(b.value_vars)
        body.append(_optional(b, rng.choice(subjects)))
        body += b.filters(1, required_values)
        projected = b.projection()
        return _select(_head(projected), body, b.order_by(projected, total=True), b.slice(),
                       distinct=rng.random() < 0.3)
    if mix == 1:
        return _query_u(b)
    body = b.triples(1, 2)
    subjects = list(b.vertex_vars)
    body.append(_optional(b, subjects[0]))
    counted = list(b.value_vars)[-1]
    keys = [subjects[0]]
    return _select(f"?{keys[0]} (COUNT(?{counted}) AS ?cnt)", body, f"GROUP BY ?{keys[0]}",
                   "ORDER BY DESC(?cnt) ?" + keys[0], b.slice() if rng.random() < 0.5 else "")


def _query_s(b: QueryBuilder) -> str:
    rng = b.rng
    center = b.fresh("c")
    b.vertex_vars.append(center)
    subject = f"?{center}"
    body = []
    edges = 0
    for _ in range(rng.randint(10, 12)):
        roll = rng.random()
        if roll < 0.15 and edges < 2:
            edges += 1
            body.append(b.edge_triple(subject))
        elif roll < 0.3:
            body.append(b.label_triple(subject))
        else:
            body.append(b.property_triple(subject, literal=rng.random() < 0.1))
    return _select(_head(b.projection()), body)


QUERY_TEMPLATES: dict[str, Callable[[QueryBuilder], str]] = {
    "C": _query_c,
    "F": _query_f,
    "L": _query_l,
    "G": _query_g,
    "Gc": _query_gc,
    "O": _query_o,
    "U": _query_u,
    "Op": _query_op,
    "M": _query_m,
    "S": _query_s,
}


def random_query(rng: random.Random, feature: str, max_vertices: int) -> str:
    """A query of the given feature class that passes validation"""
    return QUERY_TEMPLATES[feature](QueryBuilder(rng, max_vertices))


# Runs

@dataclass
class FuzzFailure:
    iteration: int
    feature: str
    query_text: str
    graph: PropertyGraph
    outcome: CheckOutcome


@dataclass
class FuzzReport:
    seed: int
    count: int
    max_vertices: int
    tally: ClassTally = field(default_factory=ClassTally)
    failure: Optional[FuzzFailure] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def lines(self) -> list[str]:
        lines = [f"fuzz seed={self.seed} count={self.count} max-vertices={self.max_vertices}"]
        for feature in FEATURE_CLASSES:
            ok = self.tally.passed.get(feature, 0)
            failed = self.tally.failed.get(feature, 0)
            if ok or failed:
                lines.append(f"{feature} {ok} ok" + (f" {failed} failed" if failed else ""))
        lines.append(f"total {self.tally.total} checked {self.tally.failures} failed")
        if self.failure is not None:
            failure = self.failure
            outcome = failure.outcome
            lines.append(f"FAIL iteration={failure.iteration} class={failure.feature} "
                         f"seed={self.seed} status={outcome.status.value}")
            lines.append("query:")
            lines.extend("  " + line for line in failure.query_text.rstrip("\n").splitlines())
            lines.append("graph:")
            lines.extend("  " + line for line in dump_graph(failure.graph).rstrip("\n").splitlines())
            detail = outcome.diff or f"{outcome.code}: {outcome.message}"
            lines.append("diff:")
            lines.extend("  " + line for line in detail.splitlines())
        return lines


def iteration_rng(seed: int, iteration: int) -> random.Random:
    return random.Random(f"{seed}:{iteration}")


def run_fuzz(seed: int, count: int, max_vertices: int,
             runtime: Optional[DifferentialRuntime] = None) -> FuzzReport:
    """Run ``count`` differential checks; stops at the first failure"""
    if count < 1:
        raise ValueError("count must be at least 1")
    if max_vertices < 1:
        raise ValueError("max_vertices must be at least 1")

    runtime = runtime or DifferentialRuntime()
    report = FuzzReport(seed, count, max_vertices)
    for iteration in range(count):
        feature = FEATURE_CLASSES[iteration % len(FEATURE_CLASSES)]
        rng = iteration_rng(seed, iteration)
        graph = random_graph(rng, max_vertices)
        query_text = random_query(rng, feature, max_vertices)

        outcome = runtime.check(query_text, graph, label=f"{feature}#{iteration}")
        report.tally.record(feature, outcome)
        if not outcome.passed:
            report.failure = FuzzFailure(iteration, feature, query_text, graph, outcome)
            logger.info("fuzz iteration %d (%s) failed: %s", iteration, feature, outcome.status.value)
            break
    return report
