"""
Error hierarchy for sparql2gremlin

Every failure the package reports carries a stable, machine-readable ``code``
(the class name unless overridden) so the CLI can print
``error: <CODE>: <message>`` and tests can match on codes rather than text.
"""
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourcePosition:
    """Offset (0-based) plus 1-based line and column inside a source text"""
    offset: int
    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class Sparql2GremlinError(Exception):
    """Base class for all sparql2gremlin errors"""

    code: str = "Sparql2GremlinError"

    def __init__(self, message: str, position: Optional[SourcePosition] = None):
        super().__init__(message)
        self.message = message
        self.position = position

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        # Codes default to the class name; subclasses may pin their own
        if "code" not in cls.__dict__:
            cls.code = cls.__name__

    def describe(self) -> str:
        """Human readable message with the position appended when known"""
        if self.position is not None:
            return f"{self.message} at {self.position}"
        return self.message

    def __str__(self) -> str:
        return self.describe()


# core-model

class UnknownPrefix(Sparql2GremlinError):
    pass


class RedefinedBuiltinPrefix(Sparql2GremlinError):
    pass


class NonConcreteTriple(Sparql2GremlinError):
    pass


class InvalidTerm(Sparql2GremlinError):
    pass


# sparql-parser

class LexError(Sparql2GremlinError):
    pass


class ParseError(Sparql2GremlinError):
    """Syntax error with the set of token descriptions that would have been accepted"""

    def __init__(
        self,
        message: str,
        position: Optional[SourcePosition] = None,
        expected: frozenset[str] = frozenset(),
    ):
        super().__init__(message, position)
        self.expected = expected

    def describe(self) -> str:
        text = super().describe()
        if self.expected:
            text += f" (expected one of: {', '.join(sorted(self.expected))})"
        return text


class ValidationError(Sparql2GremlinError):
    """A query that parses but lies outside the translatable subset"""


class UnsupportedVariablePredicate(ValidationError):
    pass


class UnsupportedRegex(ValidationError):
    pass


class OrderVariableNotProjected(ValidationError):
    pass


class InvalidGrouping(ValidationError):
    pass


class ProjectedVariableNotInPattern(ValidationError):
    pass


class AggregateAliasInUse(ValidationError):
    pass


class UnionVariableNotBound(ValidationError):
    pass


class UnsupportedOptionalPattern(ValidationError):
    pass


class UnsupportedMultipleUnion(ValidationError):
    pass


class FilterVariableOutOfScope(ValidationError):
    pass


# translator

class TranslationError(Sparql2GremlinError):
    pass


class UnknownPredicateNamespace(TranslationError):
    pass


class IllTypedPattern(TranslationError):
    pass


class UnsupportedDisjunction(TranslationError):
    pass


# gremlin-ir

class BytecodeDecodeError(Sparql2GremlinError):
    """Malformed bytecode document; ``path`` points at the offending element"""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{message} (at {path})")
        self.path = path


class GroovyReadError(Sparql2GremlinError):
    pass


# pg-engine

class GraphFormatError(Sparql2GremlinError):
    pass


class MalformedTraversal(Sparql2GremlinError):
    pass


# fixtures

class FixtureError(Sparql2GremlinError):
    pass


class InputFileError(Sparql2GremlinError):
    """A query or traversal file named on the command line cannot be read"""
