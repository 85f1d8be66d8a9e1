"""
SPARQL to traversal translation
"""

from .translate import classify_predicate, translate_bgp, translate_filter, translate_optional, translate_query

__all__ = [
    'classify_predicate',
    'translate_bgp',
    'translate_filter',
    'translate_optional',
    'translate_query',
]
