"""
The fixed RDF view of a property graph and its N-Triples debug export
"""
from typing import Iterable

from .errors import NonConcreteTriple
from .graph import PropertyGraph
from .prefixes import EDGE_NS, LABEL_PREDICATE, VERTEX_PROPERTY_NS, vertex_iri
from .terms import Iri, Literal, LiteralKind, Triple

_NT_ESCAPES = str.maketrans({"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"})


def pg_to_rdf_view(graph: PropertyGraph) -> list[Triple]:
    """
    Subject-major: per vertex in graph order, its label triple, its property
    triples, then its out-edges in insertion order.

    This is the order in which the traversal engine visits vertices and
    out-edges, so scanning this list enumerates solutions in the engine's order.
    """
    triples: list[Triple] = []
    for vertex in graph.iter_vertices():
        subject = vertex_iri(vertex.id)
        triples.append(Triple(subject, LABEL_PREDICATE, Literal.string(vertex.label)))
        for key, value in vertex.properties.items():
            triples.append(Triple(subject, Iri(VERTEX_PROPERTY_NS + key), value))
        for edge in graph.out_edges(vertex.id):
            triples.append(Triple(subject, Iri(EDGE_NS + edge.label), vertex_iri(edge.target)))
    return triples


def _nt_term(term) -> str:
    if isinstance(term, Iri):
        return str(term)
    if isinstance(term, Literal):
        if term.kind is LiteralKind.STRING:
            return '"' + term.value.translate(_NT_ESCAPES) + '"'
        return term.lexical()
    raise NonConcreteTriple(f"cannot export term {term!r}")


def rdf_view_to_ntriples(triples: Iterable[Triple]) -> str:
    lines = []
    for triple in triples:
        if not triple.is_concrete:
            raise NonConcreteTriple(f"triple contains a variable or unbound term: {triple}")
        lines.append(f"{_nt_term(triple.s)} {_nt_term(triple.p)} {_nt_term(triple.o)} .")
    if not lines:
        return ""
    return "\n".join(sorted(lines)) + "\n"
