"""
Traversal engine and graph loader
"""
import itertools
import json
import random
from collections import Counter

import pytest

from sparql2gremlin.core.errors import GraphFormatError, MalformedTraversal
from sparql2gremlin.core.prefixes import vertex_iri
from sparql2gremlin.core.terms import UNBOUND, Iri, Literal, Triple, Var
from sparql2gremlin.engine import dump_graph, eval_traversal, get_registered_steps, load_graph, read_graph
from sparql2gremlin.fixtures import get_dataset_path
from sparql2gremlin.gremlin import from_groovy
from sparql2gremlin.gremlin.steps import As, Dedup, Match, Out, Range, Select, Traversal, V, Values
from sparql2gremlin.harness.fuzz import EDGE_LABELS, PROPERTY_KEYS, VERTEX_LABELS, random_graph
from sparql2gremlin.sparql import parse, validate
from sparql2gremlin.translator import translate_bgp, translate_query


def _run(text: str, graph):
    return eval_traversal(translate_query(validate(parse(text))), graph)


def _rows(table):
    return Counter(table.aligned_rows(table.columns))


# G0 examples

def test_knows_pairs(g0):
    table = eval_traversal(from_groovy("g.V().match(__.as('a').out('knows').as('b')).select('a','b')"), g0)
    assert table.columns == ("a", "b")
    assert table.aligned_rows(table.columns) == [(vertex_iri("1"), vertex_iri("2"))]


def test_names_are_an_unordered_multiset(g0):
    table = _run("SELECT ?n WHERE { ?p v:name ?n }", g0)
    assert not table.ordered
    assert _rows(table) == Counter([(Literal.string(n),) for n in ("alice", "bob", "grem")])


def test_empty_range(g0):
    table = _run("SELECT ?n WHERE { ?p v:name ?n } LIMIT 0", g0)
    assert table.columns == ("n",)
    assert len(table) == 0


def test_group_count_created_targets(g0):
    table = _run("SELECT ?t (COUNT(?s) AS ?c) WHERE { ?s e:created ?t } GROUP BY ?t", g0)
    assert table.columns == ("t", "c")
    assert table.aligned_rows(table.columns) == [(vertex_iri("3"), Literal.integer(2))]


def test_count_without_keys(g0):
    table = _run("SELECT (COUNT(?p) AS ?c) WHERE { ?p v:age ?a }", g0)
    assert table.aligned_rows(("c",)) == [(Literal.integer(2),)]


def test_optional_fills_unbound(g0):
    table = _run("SELECT ?n ?a WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } }", g0)
    assert _rows(table) == Counter([
        (Literal.string("alice"), Literal.integer(30)),
        (Literal.string("bob"), Literal.integer(25)),
        (Literal.string("grem"), UNBOUND),
    ])


def test_count_skips_unbound_optional_values(g0):
    table = _run("SELECT ?n (COUNT(?a) AS ?c) WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } } GROUP BY ?n", g0)
    counts = {row[0].value: row[1].value for row in table.aligned_rows(("n", "c"))}
    assert counts == {"alice": 1, "bob": 1, "grem": 0}


def test_constant_subject_binds_by_id(g0):
    table = _run("SELECT ?n WHERE { <urn:pg:v:1> e:knows ?b . ?b v:name ?n }", g0)
    assert table.aligned_rows(("n",)) == [(Literal.string("bob"),)]


def test_union_keeps_branch_order(g0):
    table = _run("SELECT ?a ?b WHERE { { ?a e:knows ?b } UNION { ?a e:created ?b } }", g0)
    assert table.aligned_rows(("a", "b")) == [
        (vertex_iri("1"), vertex_iri("2")),
        (vertex_iri("1"), vertex_iri("3")),
        (vertex_iri("2"), vertex_iri("3")),
    ]


def test_cyclic_pattern_joins_on_repeated_label(g0):
    table = _run("SELECT ?a ?b WHERE { ?a e:created ?s . ?b e:created ?s . ?a e:knows ?b }", g0)
    assert table.aligned_rows(("a", "b")) == [(vertex_iri("1"), vertex_iri("2"))]


def test_order_is_total_and_stable(g0):
    table = _run("SELECT ?n ?a WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } } ORDER BY DESC(?a) ?n", g0)
    assert table.ordered
    assert [row[0].value for row in table.aligned_rows(("n", "a"))] == ["alice", "bob", "grem"]


def test_filter_comparisons_fail_on_unbound(g0):
    table = _run("SELECT ?n WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } FILTER(?a != 30) }", g0)
    assert table.aligned_rows(("n",)) == [(Literal.string("bob"),)]


def test_numeric_filter_unifies_integer_and_double(commerce):
    table = _run('SELECT ?n WHERE { ?p v:label "product" . ?p v:name ?n . ?p v:price ?x FILTER(?x = 120) }',
                 commerce)
    assert len(table) == 2


# Properties

def test_dedup_is_idempotent(commerce):
    base = translate_query(validate(parse("SELECT ?c WHERE { ?p v:country ?c }")))
    once = eval_traversal(base + Traversal((Dedup(),)), commerce)
    twice = eval_traversal(base + Traversal((Dedup(), Dedup())), commerce)
    assert once == twice
    assert len(once) < len(eval_traversal(base, commerce))


def test_slicing_is_monotone(commerce):
    text = 'SELECT ?name ?price WHERE { ?p v:label "product" . ?p v:name ?name . ?p v:price ?price } ' \
           'ORDER BY DESC(?price) ?name'
    full = _run(text, commerce).rows
    for offset, limit in ((0, 3), (2, 5), (14, 10), (40, 1)):
        sliced = _run(f"{text} LIMIT {limit} OFFSET {offset}", commerce).rows
        assert sliced == full[offset:offset + limit]


def _naive_single_pattern(graph, predicate: str, obj):
    rows = []
    if predicate.startswith("e:"):
        label = predicate[2:]
        rows = [(vertex_iri(e.source), vertex_iri(e.target)) for e in graph.edges.values() if e.label == label]
    elif predicate == "v:label" and obj is None:
        rows = [(vertex_iri(v.id), Literal.string(v.label)) for v in graph.iter_vertices()]
    elif predicate == "v:label":
        rows = [(vertex_iri(v.id),) for v in graph.iter_vertices() if v.label == obj]
    else:
        key = predicate[2:]
        rows = [(vertex_iri(v.id), v.properties[key]) for v in graph.iter_vertices() if key in v.properties]
    return Counter(rows)


def test_single_patterns_agree_with_enumeration():
    predicates = [f"e:{label}" for label in EDGE_LABELS] + [f"v:{key}" for key in PROPERTY_KEYS] + ["v:label"]
    for seed in range(100):
        rng = random.Random(seed)
        graph = random_graph(rng, 15)
        for predicate in predicates:
            table = _run(f"SELECT ?s ?o WHERE {{ ?s {predicate} ?o }}", graph)
            assert _rows(table) == _naive_single_pattern(graph, predicate, None), (seed, predicate)
        label = rng.choice(VERTEX_LABELS)
        table = _run(f'SELECT ?s WHERE {{ ?s v:label "{label}" }}', graph)
        assert _rows(table) == _naive_single_pattern(graph, "v:label", label), seed


def _random_triple(rng: random.Random) -> Triple:
    subject = Var(rng.choice("abc"))
    kind = rng.randrange(3)
    if kind == 0:
        return Triple(subject, Iri(f"urn:pg:e:{rng.choice(EDGE_LABELS)}"), Var(rng.choice("abcd")))
    if kind == 1:
        return Triple(subject, Iri(f"urn:pg:vp:{rng.choice(PROPERTY_KEYS)}"), Var(rng.choice(("x", "y"))))
    return Triple(subject, Iri("urn:pg:vp:label"), Literal.string(rng.choice(VERTEX_LABELS)))


def test_match_is_invariant_under_pattern_order():
    rng = random.Random(2024)
    for _ in range(100):
        graph = random_graph(rng, 8)
        triples = [_random_triple(rng) for _ in range(3)]
        names = sorted({v for t in triples for v in t.variables()})
        ssts = [translate_bgp(t) for t in triples]
        results = []
        for order in itertools.permutations(ssts):
            traversal = Traversal((V(), Match(order), Select(tuple(names))))
            results.append(_rows(eval_traversal(traversal, graph)))
        assert all(result == results[0] for result in results[1:]), triples


def test_in_pattern_steps_drop_non_vertex_elements(g0):
    # ?n holds a string, so out() from it yields nothing inside the pattern
    traversal = Traversal((V(), Match((
        Traversal((As("p"), Values("name"), As("n"))),
        Traversal((As("n"), Out("knows"), As("q"))),
    )), Select(("p", "q"))))
    assert len(eval_traversal(traversal, g0)) == 0


@pytest.mark.parametrize("groovy", [
    "g.V().values('name').out('knows')",
    "g.V().label().values('name')",
    "g.V().V()",
    "g.V().match(__.values('name').as('n'))",
    "g.V().select('a').as('b')",
])
def test_malformed_traversals(g0, groovy):
    with pytest.raises(MalformedTraversal):
        eval_traversal(from_groovy(groovy), g0)


def test_nested_match_is_malformed(g0):
    inner = Match((Traversal((As("a"), Out("knows"), As("b"))),))
    traversal = Traversal((V(), Match((Traversal((As("a"), inner)),))))
    with pytest.raises(MalformedTraversal):
        eval_traversal(traversal, g0)


def test_range_without_order_slices_in_engine_order(g0):
    base = from_groovy("g.V().match(__.as('p').values('name').as('n')).select('n')")
    full = eval_traversal(base, g0).rows
    sliced = eval_traversal(base + Traversal((Range(1, 2),)), g0).rows
    assert sliced == full[1:2]


def test_every_step_has_a_handler():
    assert set(get_registered_steps()) >= {
        "V", "Match", "UnionStep", "As", "Out", "Values", "Label", "Has", "HasLabel", "HasId",
        "Where", "Coalesce", "Constant", "Select", "Dedup", "Order", "Range", "CountStep", "GroupCount",
    }


# Loader

def test_load_bundled_g0():
    graph = read_graph(get_dataset_path("g0"))
    assert len(graph.vertices) == 3
    assert len(graph.edges) == 3
    assert graph.vertex("1").properties["age"] == Literal.integer(30)


def test_load_empty_graph():
    graph = load_graph('{"vertices": [], "edges": []}')
    assert len(graph) == 0
    assert len(graph.edges) == 0


def test_dump_and_load_preserve_the_graph(commerce):
    again = load_graph(dump_graph(commerce))
    assert again == commerce
    prices = {v.id: v.properties.get("price") for v in again.iter_vertices()}
    assert prices["pr16"].kind is Literal.double(1.0).kind
    assert prices["pr6"].kind is Literal.integer(1).kind


def _doc(vertices, edges=()):
    return json.dumps({"vertices": list(vertices), "edges": list(edges)})


PERSON = {"id": "1", "label": "person", "properties": {"name": "alice"}}


@pytest.mark.parametrize("document", [
    _doc([PERSON], [{"id": "e1", "label": "knows", "from": "1", "to": "9"}]),
    _doc([PERSON, PERSON]),
    _doc([{"id": "a b", "label": "person"}]),
    _doc([PERSON, {"id": "2", "label": "person"}],
         [{"id": "e1", "label": "knows", "from": "1", "to": "2"},
          {"id": "e1", "label": "knows", "from": "2", "to": "1"}]),
    '{"vertices": [{"id": "1", "label": "person", "properties": {"name": "a", "name": "b"}}], "edges": []}',
    '{"vertices": [{"id": "1", "label": "person", "properties": {"score": NaN}}], "edges": []}',
    _doc([{"id": "1", "label": "person", "properties": {"tags": ["a"]}}]),
    _doc([{"id": "1", "label": "person", "properties": {"label": "x"}}]),
    _doc([{"id": "1", "label": "person", "colour": "red"}]),
    _doc([{"id": 1, "label": "person"}]),
    '{"vertices": [',
])
def test_bad_graph_documents(document):
    with pytest.raises(GraphFormatError):
        load_graph(document)


def test_read_graph_missing_file(tmp_path):
    with pytest.raises(GraphFormatError):
        read_graph(tmp_path / "missing.json")
