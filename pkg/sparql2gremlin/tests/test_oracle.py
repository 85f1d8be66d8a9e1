"""
Reference SPARQL evaluator
"""
import random
from collections import Counter

from sparql2gremlin.core.prefixes import vertex_iri
from sparql2gremlin.core.rdf_view import pg_to_rdf_view
from sparql2gremlin.core.solutions import solutions_equal
from sparql2gremlin.core.terms import UNBOUND, Iri, Literal, Triple, Var
from sparql2gremlin.harness.fuzz import random_graph, random_query
from sparql2gremlin.oracle import bgp_join, eval_sparql
from sparql2gremlin.sparql import parse

NAME = Iri("urn:pg:vp:name")
AGE = Iri("urn:pg:vp:age")


def _sparql(text: str, graph):
    return eval_sparql(parse(text), pg_to_rdf_view(graph))


def _rows(table):
    return Counter(table.aligned_rows(table.columns))


def test_names(g0):
    table = _sparql("SELECT ?n WHERE { ?p v:name ?n }", g0)
    assert _rows(table) == Counter([(Literal.string(n),) for n in ("alice", "bob", "grem")])


def test_knows(g0):
    table = _sparql("SELECT ?a ?b WHERE { ?a e:knows ?b }", g0)
    assert table.rows == ((vertex_iri("1"), vertex_iri("2")),)


def test_limit_zero(g0):
    assert len(_sparql("SELECT ?n WHERE { ?p v:name ?n } LIMIT 0", g0)) == 0


def test_bgp_join_star(g0):
    table = bgp_join([Triple(Var("p"), NAME, Var("n")), Triple(Var("p"), AGE, Var("a"))], pg_to_rdf_view(g0))
    assert table.columns == ("p", "n", "a")
    assert _rows(table) == Counter([
        (vertex_iri("1"), Literal.string("alice"), Literal.integer(30)),
        (vertex_iri("2"), Literal.string("bob"), Literal.integer(25)),
    ])


def test_bgp_join_unsatisfiable(g0):
    assert len(bgp_join([Triple(Var("x"), NAME, Literal.string("zz"))], pg_to_rdf_view(g0))) == 0


def test_bgp_join_constant_triple(g0):
    table = bgp_join([Triple(vertex_iri("1"), NAME, Literal.string("alice"))], pg_to_rdf_view(g0))
    assert table.columns == ()
    assert table.rows == ((),)


def test_bgp_join_ignores_pattern_order():
    rng = random.Random(5)
    for _ in range(30):
        data = pg_to_rdf_view(random_graph(rng, 8))
        patterns = [
            Triple(Var("a"), Iri("urn:pg:e:knows"), Var("b")),
            Triple(Var("b"), Iri("urn:pg:vp:name"), Var("n")),
            Triple(Var("a"), Iri("urn:pg:vp:label"), Var("l")),
        ]
        forward = bgp_join(patterns, data)
        backward = bgp_join(list(reversed(patterns)), data)
        assert solutions_equal(forward, backward)


def test_optional_left_join(g0):
    table = _sparql("SELECT ?n ?a WHERE { ?p v:name ?n OPTIONAL { ?p v:age ?a } }", g0)
    assert _rows(table) == Counter([
        (Literal.string("alice"), Literal.integer(30)),
        (Literal.string("bob"), Literal.integer(25)),
        (Literal.string("grem"), UNBOUND),
    ])


def test_union_appends_branches(g0):
    table = _sparql("SELECT ?a ?b WHERE { { ?a e:knows ?b } UNION { ?a e:created ?b } }", g0)
    assert len(table) == 3


def test_union_branch_filter_applies_to_its_branch_only(commerce):
    text = ("SELECT ?who ?item WHERE { ?p v:name ?who . "
            "{ ?p e:purchased ?x . ?x v:name ?item . ?x v:price ?price . FILTER(?price > 100000) } "
            "UNION { ?p e:knows ?f . ?f v:name ?item } }")
    knows = _sparql("SELECT ?who ?item WHERE { ?p v:name ?who . ?p e:knows ?f . ?f v:name ?item }", commerce)
    assert solutions_equal(_sparql(text, commerce), knows)


def test_group_count_and_count_without_keys(g0):
    grouped = _sparql("SELECT ?t (COUNT(?s) AS ?c) WHERE { ?s e:created ?t } GROUP BY ?t", g0)
    assert grouped.rows == ((vertex_iri("3"), Literal.integer(2)),)
    total = _sparql("SELECT (COUNT(?s) AS ?c) WHERE { ?s e:created ?t }", g0)
    assert total.rows == ((Literal.integer(2),),)


def test_count_of_empty_match_is_zero(g0):
    table = _sparql('SELECT (COUNT(?p) AS ?c) WHERE { ?p v:name "nobody" }', g0)
    assert table.rows == ((Literal.integer(0),),)


def test_order_distinct_and_slice(commerce):
    table = _sparql("SELECT DISTINCT ?c WHERE { ?p v:country ?c } ORDER BY DESC(?c) LIMIT 2 OFFSET 1", commerce)
    everything = _sparql("SELECT DISTINCT ?c WHERE { ?p v:country ?c } ORDER BY DESC(?c)", commerce)
    assert table.ordered
    assert len(set(everything.rows)) == len(everything.rows)
    assert table.rows == everything.rows[1:3]


def test_offset_beyond_cardinality(g0):
    assert len(_sparql("SELECT ?n WHERE { ?p v:name ?n } OFFSET 10", g0)) == 0


def test_limit_bounds_random_queries():
    for iteration in range(50):
        rng = random.Random(iteration)
        graph = random_graph(rng, 10)
        query = parse(random_query(rng, "L", 10))
        table = eval_sparql(query, pg_to_rdf_view(graph))
        if query.limit is not None:
            assert len(table) <= query.limit
        if query.distinct:
            assert len(set(table.aligned_rows(table.columns))) == len(table)
