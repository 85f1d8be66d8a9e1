"""
SPARQL front end: lexer, parser, canonical printer and the translatability checks
"""

from .ast import SelectQuery, ValidatedQuery
from .lexer import Token, TokenKind, tokenize
from .parser import parse
from .printer import to_sparql
from .validator import validate

__all__ = [
    'tokenize',
    'Token',
    'TokenKind',
    'parse',
    'validate',
    'to_sparql',
    'SelectQuery',
    'ValidatedQuery',
]
