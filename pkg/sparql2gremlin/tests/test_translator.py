"""
Translation of triple patterns, filters and whole queries into traversals
"""
import pytest

from sparql2gremlin.core.comparison import CompareOp, Direction
from sparql2gremlin.core.errors import (
    IllTypedPattern,
    UnknownPredicateNamespace,
    UnsupportedDisjunction,
    UnsupportedVariablePredicate,
)
from sparql2gremlin.core.terms import UNBOUND, Iri, Literal, Triple, Var
from sparql2gremlin.gremlin import to_groovy
from sparql2gremlin.gremlin.steps import (
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
    Traversal,
    UnionStep,
    V,
    Values,
    VarRef,
    Where,
    walk,
)
from sparql2gremlin.sparql import parse, validate
from sparql2gremlin.sparql.ast import triple_variables
from sparql2gremlin.translator import (
    classify_predicate,
    translate_bgp,
    translate_filter,
    translate_optional,
    translate_query,
)
from sparql2gremlin.translator.translate import EdgeLabel, VertexLabel, VertexProp


def _translate(text: str) -> Traversal:
    return translate_query(validate(parse(text)))


def _filter(condition: str):
    return parse(f"SELECT ?a WHERE {{ ?a v:age ?x . ?a v:score ?b FILTER({condition}) }}").where.filters()[0]


def _sst(*steps) -> Traversal:
    return Traversal(steps)


# predicates

@pytest.mark.parametrize("iri, kind", [
    ("urn:pg:vp:name", VertexProp("name")),
    ("urn:pg:vp:label", VertexLabel()),
    ("urn:pg:e:knows", EdgeLabel("knows")),
    ("urn:pg:vp:first-name", VertexProp("first-name")),
])
def test_classify_predicate(iri, kind):
    assert classify_predicate(Iri(iri)) == kind


@pytest.mark.parametrize("iri", [
    "http://example.org/name",
    "urn:pg:vp:",
    "urn:pg:e:",
    "urn:pg:v:1",
])
def test_classify_predicate_rejects_foreign_namespaces(iri):
    with pytest.raises(UnknownPredicateNamespace):
        classify_predicate(Iri(iri))


# triple patterns

NAME = Iri("urn:pg:vp:name")
AGE = Iri("urn:pg:vp:age")
LABEL = Iri("urn:pg:vp:label")
KNOWS = Iri("urn:pg:e:knows")
V1 = Iri("urn:pg:v:1")
V2 = Iri("urn:pg:v:2")


@pytest.mark.parametrize("triple, expected", [
    (Triple(Var("p"), NAME, Var("n")), _sst(As("p"), Values("name"), As("n"))),
    (Triple(Var("p"), NAME, Literal.string("alice")),
     _sst(As("p"), Has("name", Pred(CompareOp.EQ, Literal.string("alice"))))),
    (Triple(Var("p"), LABEL, Var("l")), _sst(As("p"), Label(), As("l"))),
    (Triple(Var("p"), LABEL, Literal.string("person")), _sst(As("p"), HasLabel(Literal.string("person")))),
    (Triple(Var("a"), KNOWS, Var("b")), _sst(As("a"), Out("knows"), As("b"))),
    (Triple(Var("a"), KNOWS, V2), _sst(As("a"), Out("knows"), HasId("2"))),
    (Triple(V1, AGE, Literal.integer(30)),
     _sst(As("_v0"), HasId("1"), Has("age", Pred(CompareOp.EQ, Literal.integer(30))))),
])
def test_translate_bgp_mapping(triple, expected):
    assert translate_bgp(triple) == expected


@pytest.mark.parametrize("triple", [
    Triple(Var("a"), KNOWS, Literal.string("bob")),
    Triple(Var("a"), NAME, V1),
    Triple(Var("a"), LABEL, V1),
    Triple(Var("a"), KNOWS, Iri("urn:pg:e:knows")),
    Triple(Iri("http://example.org/x"), NAME, Var("n")),
])
def test_translate_bgp_ill_typed(triple):
    with pytest.raises(IllTypedPattern):
        translate_bgp(triple)


def test_translate_bgp_unknown_namespace():
    with pytest.raises(UnknownPredicateNamespace):
        translate_bgp(Triple(Var("a"), Iri("http://xmlns.com/foaf/0.1/name"), Var("n")))


def test_translate_optional_wraps_body_in_coalesce():
    sst = translate_optional(Triple(Var("p"), AGE, Var("a")))
    assert sst == _sst(
        As("p"),
        Coalesce((Traversal((Values("age"),)), Traversal((Constant(UNBOUND),)))),
        As("a"),
    )


def test_translate_optional_edge():
    sst = translate_optional(Triple(Var("x"), Iri("urn:pg:e:purchased"), Var("p")))
    assert sst.steps[1] == Coalesce((Traversal((Out("purchased"),)), Traversal((Constant(UNBOUND),))))


# filters

def test_translate_filter_literal_comparison():
    assert translate_filter(_filter("?x > 25")) == [Where("x", Pred(CompareOp.GT, Literal.integer(25)))]


def test_translate_filter_conjunction_flattens():
    assert translate_filter(_filter("?x > 20 && ?x < 40")) == [
        Where("x", Pred(CompareOp.GT, Literal.integer(20))),
        Where("x", Pred(CompareOp.LT, Literal.integer(40))),
    ]


def test_translate_long_conjunction_and_disjunction():
    wheres = translate_filter(_filter(" && ".join(f"?x != {i}" for i in range(3000))))
    assert len(wheres) == 3000
    assert wheres[-1] == Where("x", Pred(CompareOp.NEQ, Literal.integer(2999)))
    (where,) = translate_filter(_filter(" || ".join(f"?x = {i}" for i in range(3000))))
    assert len(where.pred.preds) == 3000


def test_translate_filter_variable_comparison():
    assert translate_filter(_filter("?x <= ?b")) == [Where("x", Pred(CompareOp.LTE, VarRef("b")))]


def test_translate_filter_flipped_constant_side():
    assert translate_filter(_filter("25 < ?x")) == [Where("x", Pred(CompareOp.GT, Literal.integer(25)))]


def test_translate_filter_same_variable_disjunction():
    wheres = translate_filter(_filter("?x <= 2 || ?x >= 10 || ?x = 5"))
    assert wheres == [Where("x", OrPred((
        Pred(CompareOp.LTE, Literal.integer(2)),
        Pred(CompareOp.GTE, Literal.integer(10)),
        Pred(CompareOp.EQ, Literal.integer(5)),
    )))]


@pytest.mark.parametrize("condition", [
    "?x > 20 || ?b < 5",
    "?x > ?b || ?x < 5",
    "(?x > 1 && ?x < 3) || ?x = 9",
])
def test_translate_filter_unsupported_disjunction(condition):
    with pytest.raises(UnsupportedDisjunction):
        translate_filter(_filter(condition))


# whole queries

def test_translate_plain_pattern():
    traversal = _translate("SELECT ?n WHERE { ?p v:name ?n }")
    assert traversal == _sst(V(), Match((_sst(As("p"), Values("name"), As("n")),)), Select(("n",)))
    assert to_groovy(traversal) == "g.V().match(__.as('p').values('name').as('n')).select('n')"


def test_translate_union():
    traversal = _translate("SELECT ?a ?b WHERE { { ?a e:knows ?b } UNION { ?a e:created ?b } }")
    assert traversal == _sst(
        V(),
        UnionStep((
            _sst(Match((_sst(As("a"), Out("knows"), As("b")),))),
            _sst(Match((_sst(As("a"), Out("created"), As("b")),))),
        )),
        Select(("a", "b")),
    )


def test_translate_union_copies_required_triples_and_keeps_branch_filters(corpus):
    entry = next(e for e in corpus if e.id == "U3")
    traversal = translate_query(validate(parse(entry.text)))
    union = traversal.steps[1]
    assert isinstance(union, UnionStep)
    left, right = union.traversals
    top = _sst(As("p"), Values("name"), As("who"))
    assert left.steps[0].traversals[0] == top
    assert right.steps[0].traversals[0] == top
    assert left.steps[1:] == (Where("price", Pred(CompareOp.GT, Literal.integer(100))),)
    assert right.steps[1:] == ()


def test_translate_filters_follow_match():
    traversal = _translate("SELECT ?p WHERE { ?p v:age ?a FILTER(?a > 25) }")
    assert traversal.steps[2] == Where("a", Pred(CompareOp.GT, Literal.integer(25)))
    assert traversal.steps[3] == Select(("p",))


def test_translate_optional_query():
    traversal = _translate("SELECT ?n ?a WHERE { ?p v:name ?n . OPTIONAL { ?p v:age ?a } }")
    match = traversal.steps[1]
    assert match.traversals[1] == translate_optional(Triple(Var("p"), AGE, Var("a")))
    assert to_groovy(traversal) == (
        "g.V().match(__.as('p').values('name').as('n'), "
        "__.as('p').coalesce(__.values('age'), __.constant('urn:pg:unbound')).as('a'))"
        ".select('n','a')"
    )


def test_translate_group_count():
    traversal = _translate("SELECT ?t (COUNT(?s) AS ?c) WHERE { ?s e:created ?t } GROUP BY ?t")
    assert traversal.steps[-1] == GroupCount(("t",), "s", "c")
    assert not any(isinstance(step, Select) for step in traversal)


def test_translate_count_without_keys():
    traversal = _translate("SELECT (COUNT(?s) AS ?c) WHERE { ?s e:created ?t }")
    assert traversal.steps[-1] == CountStep("s", "c")


def test_translate_group_without_aggregate_dedups_keys():
    traversal = _translate("SELECT ?l WHERE { ?x v:label ?l } GROUP BY ?l")
    assert traversal.steps[-2:] == (Select(("l",)), Dedup())


def test_translate_modifier_order():
    traversal = _translate(
        "SELECT DISTINCT ?n WHERE { ?p v:name ?n } ORDER BY DESC(?n) LIMIT 2 OFFSET 1")
    assert [type(step) for step in traversal] == [V, Match, Select, Dedup, Order, Range]
    assert traversal.steps[4] == Order((("n", Direction.DESC),))
    assert traversal.steps[5] == Range(1, 3)


@pytest.mark.parametrize("suffix, expected", [
    ("LIMIT 2", Range(0, 2)),
    ("OFFSET 3", Range(3, UNBOUNDED_HI)),
    ("LIMIT 5 OFFSET 9", Range(9, 14)),
    ("LIMIT 0", Range(0, 0)),
])
def test_translate_slices(suffix, expected):
    traversal = _translate(f"SELECT ?n WHERE {{ ?p v:name ?n }} ORDER BY ?n {suffix}")
    assert traversal.steps[-1] == expected


def test_fresh_variables_number_in_first_need_order():
    traversal = _translate("SELECT ?b WHERE { <urn:pg:v:1> e:knows ?b . <urn:pg:v:2> v:name ?n }")
    first, second = traversal.steps[1].traversals
    assert first.steps[:2] == (As("_v0"), HasId("1"))
    assert second.steps[:2] == (As("_v1"), HasId("2"))


def test_translate_query_validates_its_input():
    with pytest.raises(UnsupportedVariablePredicate):
        translate_query(parse("SELECT ?x WHERE { ?x ?p ?y }"))


def test_illtyped_pattern_surfaces_from_query():
    with pytest.raises(IllTypedPattern):
        _translate('SELECT ?a WHERE { ?a e:knows "bob" }')


# corpus-wide properties

def test_corpus_translation_is_deterministic(corpus):
    for entry in corpus:
        query = validate(parse(entry.text))
        assert translate_query(query) == translate_query(query), entry.id


def test_corpus_labels_are_query_or_fresh_variables(corpus):
    for entry in corpus:
        query = validate(parse(entry.text))
        traversal = translate_query(query)
        labels = {step.name for step in walk(traversal) if isinstance(step, As)}
        query_vars = set(triple_variables(query.query.where.all_triples()))
        assert query_vars <= labels, entry.id
        assert all(name in query_vars or name.startswith("_v") for name in labels), entry.id


def test_corpus_match_holds_one_sst_per_triple(corpus):
    for entry in corpus:
        query = validate(parse(entry.text)).query
        if query.where.unions():
            continue
        match = translate_query(query).steps[1]
        assert len(match.traversals) == len(query.where.all_triples()), entry.id


def test_star_queries_match_at_least_ten_ssts(corpus):
    stars = [entry for entry in corpus if entry.feature == "S"]
    assert len(stars) == 3
    for entry in stars:
        match = _translate(entry.text).steps[1]
        assert isinstance(match, Match)
        assert len(match.traversals) >= 10, entry.id


def test_slice_queries_end_in_one_range(corpus):
    expected = {"L1": Range(0, 2), "L2": Range(1, 4), "L3": Range(9, 14)}
    for entry in corpus:
        if entry.feature != "L":
            continue
        traversal = _translate(entry.text)
        ranges = [step for step in walk(traversal) if isinstance(step, Range)]
        assert ranges == [expected[entry.id]]
        assert traversal.steps[-1] == expected[entry.id]
