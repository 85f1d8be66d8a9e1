"""
Differential runtime, corpus runner and fuzzer
"""
import random

import pytest

from sparql2gremlin.core.errors import GraphFormatError
from sparql2gremlin.core.graph import Edge, PropertyGraph, Vertex
from sparql2gremlin.core.prefixes import vertex_iri
from sparql2gremlin.core.terms import Literal
from sparql2gremlin.fixtures import FEATURE_CLASSES, load_dataset
from sparql2gremlin.gremlin import from_groovy
from sparql2gremlin.harness import (
    CheckStatus,
    CompareMode,
    DifferentialRuntime,
    HarnessCallbacks,
    compare_mode,
    random_graph,
    random_query,
    run_corpus,
    run_fuzz,
)
from sparql2gremlin.sparql import parse, validate


@pytest.mark.parametrize("text, mode", [
    ("SELECT ?n WHERE { ?p v:name ?n }", CompareMode.MULTISET),
    ("SELECT ?n WHERE { ?p v:name ?n } LIMIT 2", CompareMode.MULTISET),
    ("SELECT ?n WHERE { ?p v:name ?n } OFFSET 1", CompareMode.MULTISET),
    ("SELECT ?n WHERE { ?p v:name ?n } ORDER BY ?n", CompareMode.SEQUENCE),
    ("SELECT ?n WHERE { ?p v:name ?n } ORDER BY ?n LIMIT 2", CompareMode.SEQUENCE),
    ("SELECT ?n ?a WHERE { ?p v:name ?n . ?p v:age ?a } ORDER BY ?a", CompareMode.SEQUENCE),
])
def test_compare_mode(text, mode):
    assert compare_mode(validate(parse(text)).query) is mode


def test_check_passes_on_g0(g0):
    outcome = DifferentialRuntime().check("SELECT ?a ?b WHERE { ?a e:knows ?b }", g0)
    assert outcome.status is CheckStatus.PASS
    assert len(outcome.engine) == 1
    assert outcome.traversal is not None


def test_long_conjunction_checks_end_to_end(g0):
    conditions = " && ".join(f"?a != {i}" for i in range(100, 3100))
    outcome = DifferentialRuntime().check(f"SELECT ?p ?a WHERE {{ ?p v:age ?a FILTER({conditions}) }}", g0)
    assert outcome.status is CheckStatus.PASS
    assert len(outcome.engine) == 2


def test_check_reports_errors_with_codes(g0):
    outcome = DifferentialRuntime().check("SELECT ?x WHERE { ?x ?p ?y }", g0)
    assert outcome.status is CheckStatus.ERROR
    assert outcome.code == "UnsupportedVariablePredicate"
    assert outcome.engine is None


def test_forced_traversal_mismatch(g0):
    forced = from_groovy("g.V().match(__.as('p').values('age').as('n')).select('n')")
    outcome = DifferentialRuntime().check("SELECT ?n WHERE { ?p v:name ?n }", g0, traversal=forced)
    assert outcome.status is CheckStatus.MISMATCH
    assert outcome.diff


def test_slice_without_order_compares_exactly(g0):
    outcome = DifferentialRuntime().check("SELECT ?n WHERE { ?p v:name ?n } LIMIT 2", g0)
    assert outcome.mode is CompareMode.MULTISET
    assert outcome.status is CheckStatus.PASS
    assert outcome.engine.aligned_rows(("n",)) == [(Literal.string("alice"),), (Literal.string("bob"),)]


def test_slice_of_other_rows_is_a_mismatch(g0):
    forced = from_groovy("g.V().match(__.as('p').values('name').as('n')).select('n').range(1, 3)")
    outcome = DifferentialRuntime().check("SELECT ?n WHERE { ?p v:name ?n } LIMIT 2", g0, traversal=forced)
    assert outcome.status is CheckStatus.MISMATCH
    assert "1 row(s) only in engine" in outcome.diff


def test_partial_order_compares_as_sequence(g0):
    text = "SELECT ?n ?a WHERE { ?p v:name ?n . ?p v:age ?a } ORDER BY ?a"
    forced = from_groovy("g.V().match(__.as('p').values('name').as('n'), "
                         "__.as('p').values('age').as('a')).select('n','a').order().by('a', desc)")
    outcome = DifferentialRuntime().check(text, g0, traversal=forced)
    assert outcome.mode is CompareMode.SEQUENCE
    assert outcome.status is CheckStatus.MISMATCH
    assert outcome.diff == "row order differs first at position 0"


def test_sliced_edge_pattern_follows_source_vertex_order():
    # edges inserted in a different order than their source vertices
    graph = PropertyGraph(
        [Vertex(i, "person") for i in ("5", "7", "8", "17")],
        [Edge("e1", "offers", "17", "5"), Edge("e2", "offers", "7", "5"), Edge("e3", "offers", "8", "5")],
    )
    text = "SELECT ?s WHERE { ?s e:offers <urn:pg:v:5> } OFFSET 1 LIMIT 2"
    outcome = DifferentialRuntime().check(text, graph)
    assert outcome.status is CheckStatus.PASS
    expected = [(vertex_iri("8"),), (vertex_iri("17"),)]
    assert outcome.engine.aligned_rows(("s",)) == expected
    assert outcome.oracle.aligned_rows(("s",)) == expected


@pytest.mark.parametrize("feature", FEATURE_CLASSES)
def test_engine_and_oracle_agree_row_for_row(feature):
    runtime = DifferentialRuntime()
    for iteration in range(40):
        rng = random.Random(f"rows:{feature}:{iteration}")
        graph = random_graph(rng, 12)
        text = random_query(rng, feature, 12)
        outcome = runtime.check(text, graph)
        assert outcome.passed, text
        columns = outcome.oracle.columns
        assert outcome.engine.aligned_rows(columns) == outcome.oracle.aligned_rows(columns), text


def test_callbacks_fire(g0):
    events = []
    callbacks = HarnessCallbacks(
        on_entry_start=lambda label: events.append(("start", label)),
        on_entry_result=lambda label, outcome: events.append(("result", label, outcome.status)),
        on_mismatch=lambda label, outcome: events.append(("mismatch", label)),
    )
    forced = from_groovy("g.V().match(__.as('p').values('age').as('n')).select('n')")
    DifferentialRuntime(callbacks).check("SELECT ?n WHERE { ?p v:name ?n }", g0, traversal=forced, label="q1")
    assert events == [("start", "q1"), ("result", "q1", CheckStatus.MISMATCH), ("mismatch", "q1")]


# corpus

def test_corpus_has_every_feature_class(corpus):
    assert len(corpus) == 30
    features = [entry.feature for entry in corpus]
    assert all(features.count(feature) == 3 for feature in FEATURE_CLASSES)


def test_all_corpus_entries_pass(corpus):
    report = run_corpus(corpus, load_dataset)
    failures = [(r.entry.id, r.outcome.code, r.outcome.diff) for r in report.failures()]
    assert failures == []
    assert [r.line for r in report.results] == [f"{e.id} PASS" for e in corpus]
    assert report.tally.total == 30


def test_corpus_dataset_load_error_becomes_entry_errors(corpus):
    def broken(name):
        raise GraphFormatError(f"cannot load {name}")

    report = run_corpus(corpus[:3], broken)
    assert not report.passed
    assert all(r.outcome.status is CheckStatus.ERROR for r in report.results)
    assert {r.outcome.code for r in report.results} == {"GraphFormatError"}


# fuzz

def test_random_queries_validate_for_every_class():
    for feature in FEATURE_CLASSES:
        for iteration in range(20):
            rng = random.Random(f"{feature}:{iteration}")
            validate(parse(random_query(rng, feature, 10)))


def test_random_graph_respects_size():
    rng = random.Random(1)
    for _ in range(50):
        graph = random_graph(rng, 6)
        assert 1 <= len(graph.vertices) <= 6
        assert len(graph.edges) <= 12


def test_fuzz_is_deterministic_per_seed():
    first = run_fuzz(7, 30, 8)
    second = run_fuzz(7, 30, 8)
    assert first.lines() == second.lines()


@pytest.mark.parametrize("seed", [0, 1, 42])
def test_fuzz_finds_no_disagreement(seed):
    report = run_fuzz(seed, 100, 10)
    assert report.passed, "\n".join(report.lines())
    assert report.tally.total == 100
    assert report.lines()[0] == f"fuzz seed={seed} count=100 max-vertices=10"
    assert report.lines()[-1] == "total 100 checked 0 failed"


@pytest.mark.parametrize("count, max_vertices", [(0, 5), (10, 0)])
def test_fuzz_rejects_bad_arguments(count, max_vertices):
    with pytest.raises(ValueError):
        run_fuzz(0, count, max_vertices)


# library facade

def test_facade_translate_run_and_check(g0):
    from sparql2gremlin import Sparql2Gremlin
    from sparql2gremlin.engine import dump_graph

    s2g = Sparql2Gremlin()
    assert s2g.to_groovy("SELECT ?n WHERE { ?p v:name ?n }") == \
        "g.V().match(__.as('p').values('name').as('n')).select('n')"
    assert s2g.to_bytecode("SELECT ?n WHERE { ?p v:name ?n }").startswith('{"@type":"traversal"')
    assert len(s2g.run("SELECT ?n WHERE { ?p v:name ?n }", dataset="g0")) == 3
    assert len(s2g.run("SELECT ?a ?b WHERE { ?a e:knows ?b }", dump_graph(g0))) == 1
    assert s2g.check("SELECT ?a ?b WHERE { ?a e:knows ?b }", g0).passed
    with pytest.raises(ValueError):
        s2g.run("SELECT ?n WHERE { ?p v:name ?n }")
