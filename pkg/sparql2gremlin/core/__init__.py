"""
Shared data model: RDF terms, the property graph, the RDF view between them,
solution tables and the comparison semantics both evaluators use
"""

from .comparison import CompareOp, Direction, compare_values, sort_key, values_equal
from .errors import Sparql2GremlinError, SourcePosition
from .graph import Edge, PropertyGraph, Vertex
from .prefixes import BUILTINS, PrefixTable, expand_prefix, vertex_iri
from .rdf_view import pg_to_rdf_view, rdf_view_to_ntriples
from .solutions import SolutionTable, diff_tables, solutions_equal
from .terms import UNBOUND, Iri, Literal, LiteralKind, Triple, Var, VertexRef

__all__ = [
    'Iri',
    'Literal',
    'LiteralKind',
    'Var',
    'UNBOUND',
    'VertexRef',
    'Triple',
    'Vertex',
    'Edge',
    'PropertyGraph',
    'PrefixTable',
    'BUILTINS',
    'expand_prefix',
    'vertex_iri',
    'pg_to_rdf_view',
    'rdf_view_to_ntriples',
    'SolutionTable',
    'solutions_equal',
    'diff_tables',
    'CompareOp',
    'Direction',
    'compare_values',
    'values_equal',
    'sort_key',
    'Sparql2GremlinError',
    'SourcePosition',
]
