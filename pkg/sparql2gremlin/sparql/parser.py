"""
Recursive descent parser for the SPARQL SELECT subset

Grammar (keywords case-insensitive)::

    Query      := Prologue SELECT DISTINCT? Projection WHERE Group
                  (GROUP BY Var+)? (ORDER BY Cond+)? Slice?
    Prologue   := (PREFIX pname: <iri>)*
    Projection := '*' | Var+ | Var* Count | Var* '(' Count ')'
    Count      := COUNT '(' Var ')' AS Var
    Group      := '{' (Triple '.'? | FILTER Filter | OPTIONAL '{' Triple+ '}'
                       | '{' Branch '}' UNION '{' Branch '}')* '}'
    Cond       := (ASC | DESC) '(' Var ')' | Var
    Slice      := LIMIT n (OFFSET n)? | OFFSET n (LIMIT n)?

Every error is a LexError or ParseError carrying a position inside the text.
"""
import logging
from typing import Optional, Union

from ..core.comparison import CompareOp, Direction
from ..core.errors import InvalidTerm, ParseError, RedefinedBuiltinPrefix, UnknownPrefix
from ..core.prefixes import BUILTIN_PREFIXES, PrefixTable, expand_prefix
from ..core.terms import Iri, Literal, Term, Triple, Var
from .ast import (
    And,
    Comparison,
    CountAgg,
    Filter,
    FilterExpr,
    GroupPattern,
    OptionalPattern,
    Or,
    OrderCondition,
    PatternElement,
    Projection,
    RegexCall,
    SelectQuery,
    Star,
    TriplePattern,
    UnionPattern,
    VarList,
    triple_variables,
)
from .lexer import Lexer, Token, TokenKind

logger = logging.getLogger(__name__)

MAX_NESTING = 64

_COMPARISON_OPS = {op.value: op for op in CompareOp}
_LITERAL_KINDS = (TokenKind.STRING, TokenKind.INTEGER, TokenKind.DOUBLE, TokenKind.BOOLEAN)
_TERM_START = frozenset({"variable", "IRI", "prefixed name"})

# Group pattern contexts
WHERE = "where"
OPTIONAL_BODY = "optional"
UNION_BRANCH = "branch"


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = Lexer(text).tokens()
        self.index = 0
        self.prefixes = PrefixTable()
        self.depth = 0

    # Token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind is not TokenKind.EOF:
            self.index += 1
        return token

    def at_keyword(self, *keywords: str) -> bool:
        return self.current.kind is TokenKind.KEYWORD and self.current.value in keywords

    def at_punct(self, *puncts: str) -> bool:
        return self.current.kind is TokenKind.PUNCT and self.current.value in puncts

    def error(self, message: str, expected: frozenset[str] = frozenset(),
              token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.position, expected)

    def unexpected(self, *expected: str) -> ParseError:
        return self.error(f"unexpected {self.current.describe()}", frozenset(expected))

    def expect_keyword(self, keyword: str) -> Token:
        if not self.at_keyword(keyword):
            raise self.unexpected(keyword)
        return self.advance()

    def expect_punct(self, punct: str) -> Token:
        if not self.at_punct(punct):
            raise self.unexpected(f"'{punct}'")
        return self.advance()

    def expect_var(self) -> str:
        if self.current.kind is not TokenKind.VAR:
            raise self.unexpected("variable")
        return self.advance().value

    # Query

    def parse_query(self) -> SelectQuery:
        while self.at_keyword("PREFIX"):
            self.parse_prefix()

        self.expect_keyword("SELECT")
        distinct = False
        if self.at_keyword("DISTINCT"):
            self.advance()
            distinct = True
        projection = self.parse_projection()
        self.expect_keyword("WHERE")
        where = self.parse_group(WHERE)

        group_by: tuple[str, ...] = ()
        if self.at_keyword("GROUP"):
            self.advance()
            self.expect_keyword("BY")
            group_by = self.parse_var_sequence()

        order_by: tuple[OrderCondition, ...] = ()
        if self.at_keyword("ORDER"):
            self.advance()
            self.expect_keyword("BY")
            order_by = self.parse_order_conditions()

        limit, offset = self.parse_slice()

        if self.current.kind is not TokenKind.EOF:
            expected = {"end of input"}
            if limit is None:
                expected.add("LIMIT")
            if offset is None:
                expected.add("OFFSET")
            raise self.unexpected(*expected)

        if isinstance(projection, Star):
            top = where.required_triples()
            for union in where.unions():
                top += union.left.required_triples() + union.right.required_triples()
            projection = Star(tuple(triple_variables(top)))

        return SelectQuery(
            projection=projection,
            where=where,
            prologue=self.prefixes,
            distinct=distinct,
            group_by=group_by,
            order_by=order_by,
            limit=limit,
            offset=offset,
        )

    def parse_prefix(self) -> None:
        self.expect_keyword("PREFIX")
        token = self.current
        if token.kind is not TokenKind.PNAME or token.value[1]:
            raise self.unexpected("prefix declaration 'name:'")
        self.advance()
        prefix = token.value[0]
        if prefix in BUILTIN_PREFIXES:
            raise RedefinedBuiltinPrefix(
                f"prefix '{prefix}:' is built in and cannot be redefined", token.position)
        if self.current.kind is not TokenKind.IRI:
            raise self.unexpected("IRI")
        self.prefixes = self.prefixes.with_prefix(prefix, self.make_iri(self.advance()))

    def parse_projection(self) -> Projection:
        if self.at_punct("*"):
            self.advance()
            return Star(())

        variables: list[str] = []
        while True:
            if self.current.kind is TokenKind.VAR:
                token = self.advance()
                if token.value in variables:
                    raise self.error(f"variable ?{token.value} is projected twice", token=token)
                variables.append(token.value)
            elif self.at_punct("("):
                self.advance()
                counted, alias = self.parse_count(variables)
                self.expect_punct(")")
                return CountAgg(tuple(variables), counted, alias)
            elif self.at_keyword("COUNT"):
                counted, alias = self.parse_count(variables)
                return CountAgg(tuple(variables), counted, alias)
            else:
                break

        if not variables:
            raise self.error("empty projection", frozenset({"variable", "'*'", "'('"}))
        return VarList(tuple(variables))

    def parse_count(self, variables: list[str]) -> tuple[str, str]:
        self.expect_keyword("COUNT")
        self.expect_punct("(")
        if self.at_punct("*"):
            raise self.error("COUNT(*) is not supported; count a variable instead",
                             frozenset({"variable"}))
        counted = self.expect_var()
        self.expect_punct(")")
        self.expect_keyword("AS")
        alias_token = self.current
        alias = self.expect_var()
        if alias in variables:
            raise self.error(f"variable ?{alias} is projected twice", token=alias_token)
        return counted, alias

    def parse_var_sequence(self) -> tuple[str, ...]:
        names = [self.expect_var()]
        while self.current.kind is TokenKind.VAR:
            names.append(self.advance().value)
        return tuple(names)

    def parse_order_conditions(self) -> tuple[OrderCondition, ...]:
        conditions = []
        while True:
            if self.at_keyword("ASC", "DESC"):
                direction = Direction.ASC if self.advance().value == "ASC" else Direction.DESC
                self.expect_punct("(")
                name = self.expect_var()
                self.expect_punct(")")
                conditions.append(OrderCondition(name, direction))
            elif self.current.kind is TokenKind.VAR:
                conditions.append(OrderCondition(self.advance().value, Direction.ASC))
            elif not conditions:
                raise self.unexpected("variable", "ASC", "DESC")
            else:
                return tuple(conditions)

    def parse_slice(self) -> tuple[Optional[int], Optional[int]]:
        limit: Optional[int] = None
        offset: Optional[int] = None
        while self.at_keyword("LIMIT", "OFFSET"):
            keyword = self.current
            if (keyword.value == "LIMIT" and limit is not None) or (
                    keyword.value == "OFFSET" and offset is not None):
                raise self.error(f"{keyword.value} given twice")
            self.advance()
            if self.current.kind is not TokenKind.INTEGER:
                raise self.unexpected("integer")
            value_token = self.advance()
            if value_token.value < 0:
                raise self.error(f"{keyword.value} must be non-negative", token=value_token)
            if keyword.value == "LIMIT":
                limit = value_token.value
            else:
                offset = value_token.value
        return limit, offset

    # Graph patterns

    def parse_group(self, context: str) -> GroupPattern:
        open_token = self.expect_punct("{")
        self.enter(open_token)
        elements: list[PatternElement] = []

        while not self.at_punct("}"):
            if self.at_keyword("FILTER") and context != OPTIONAL_BODY:
                self.advance()
                elements.append(Filter(self.parse_filter()))
                self.skip_dot()
            elif self.at_keyword("OPTIONAL") and context == WHERE:
                self.advance()
                elements.append(OptionalPattern(self.parse_group(OPTIONAL_BODY)))
                self.skip_dot()
            elif self.at_punct("{") and context == WHERE:
                left = self.parse_group(UNION_BRANCH)
                self.expect_keyword("UNION")
                right = self.parse_group(UNION_BRANCH)
                if self.at_keyword("UNION"):
                    raise self.error("only two UNION branches are supported", frozenset({"'}'", "'.'"}))
                elements.append(UnionPattern(left, right))
                self.skip_dot()
            elif self.current.kind in (TokenKind.VAR, TokenKind.IRI, TokenKind.PNAME):
                elements.append(TriplePattern(self.parse_triple()))
                self.end_triple(context)
            else:
                raise self.unexpected(*self.group_expectations(context))

        close_token = self.advance()
        self.depth -= 1
        group = GroupPattern(tuple(elements))
        if not group.all_triples():
            raise self.error("group pattern must contain at least one triple pattern",
                             token=close_token)
        return group

    def group_expectations(self, context: str) -> set[str]:
        expected = set(_TERM_START) | {"'}'"}
        if context != OPTIONAL_BODY:
            expected.add("FILTER")
        if context == WHERE:
            expected |= {"OPTIONAL", "'{'"}
        return expected

    def end_triple(self, context: str) -> None:
        if self.at_punct("."):
            self.advance()
            return
        if self.at_punct(";", ","):
            raise self.error("predicate-object lists (';' and ',') are not supported",
                             frozenset({"'.'", "'}'"}))
        allowed = self.at_punct("}") or (context != OPTIONAL_BODY and self.at_keyword("FILTER"))
        allowed = allowed or (context == WHERE and (self.at_keyword("OPTIONAL") or self.at_punct("{")))
        if not allowed:
            raise self.unexpected("'.'", "'}'")

    def skip_dot(self) -> None:
        if self.at_punct("."):
            self.advance()

    def enter(self, token: Token) -> None:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self.error("query nested too deeply", token=token)

    def parse_triple(self) -> Triple:
        subject = self.parse_term(allow_literal=False)
        predicate = self.parse_term(allow_literal=False)
        obj = self.parse_term(allow_literal=True)
        return Triple(subject, predicate, obj)

    def parse_term(self, allow_literal: bool) -> Term:
        token = self.current
        if token.kind is TokenKind.VAR:
            self.advance()
            return Var(token.value)
        if token.kind is TokenKind.IRI:
            return self.make_iri(self.advance())
        if token.kind is TokenKind.PNAME:
            self.advance()
            return self.expand(token)
        if allow_literal and token.kind in _LITERAL_KINDS:
            return self.make_literal(self.advance())
        expected = set(_TERM_START)
        if allow_literal:
            expected.add("literal")
        raise self.unexpected(*expected)

    def make_iri(self, token: Token) -> Iri:
        try:
            return Iri(token.value)
        except InvalidTerm as e:
            raise self.error(str(e), token=token) from e

    def expand(self, token: Token) -> Iri:
        prefix, local = token.value
        try:
            return expand_prefix(f"{prefix}:{local}", self.prefixes)
        except UnknownPrefix as e:
            raise UnknownPrefix(e.message, token.position) from e

    @staticmethod
    def make_literal(token: Token) -> Literal:
        if token.kind is TokenKind.STRING:
            return Literal.string(token.value)
        if token.kind is TokenKind.INTEGER:
            return Literal.integer(token.value)
        if token.kind is TokenKind.DOUBLE:
            return Literal.double(token.value)
        return Literal.boolean(token.value)

    # Filters

    def parse_filter(self) -> FilterExpr:
        if self.at_keyword("REGEX"):
            return self.parse_regex()
        open_token = self.expect_punct("(")
        self.enter(open_token)
        expr = self.parse_or()
        self.expect_punct(")")
        self.depth -= 1
        return expr

    def parse_or(self) -> FilterExpr:
        expr = self.parse_and()
        while self.at_punct("||"):
            self.advance()
            expr = Or(expr, self.parse_and())
        return expr

    def parse_and(self) -> FilterExpr:
        expr = self.parse_primary()
        while self.at_punct("&&"):
            self.advance()
            expr = And(expr, self.parse_primary())
        return expr

    def parse_primary(self) -> FilterExpr:
        if self.at_punct("("):
            return self.parse_filter()
        if self.at_keyword("REGEX"):
            return self.parse_regex()
        return self.parse_comparison()

    def parse_comparison(self) -> Comparison:
        lhs_token = self.current
        lhs = self.parse_operand()
        if not (self.current.kind is TokenKind.PUNCT and self.current.value in _COMPARISON_OPS):
            raise self.unexpected(*(f"'{op}'" for op in _COMPARISON_OPS))
        op = _COMPARISON_OPS[self.advance().value]
        rhs = self.parse_operand()
        if isinstance(lhs, Var):
            return Comparison(lhs, op, rhs)
        if isinstance(rhs, Var):
            return Comparison(rhs, op.flipped(), lhs)
        raise self.error("comparison between two constants is not supported",
                         frozenset({"variable"}), token=lhs_token)

    def parse_operand(self) -> Union[Var, Literal]:
        token = self.current
        if token.kind is TokenKind.VAR:
            self.advance()
            return Var(token.value)
        if token.kind in _LITERAL_KINDS:
            return self.make_literal(self.advance())
        raise self.unexpected("variable", "literal", "'('")

    def parse_regex(self) -> RegexCall:
        regex_token = self.expect_keyword("REGEX")
        self.expect_punct("(")
        args: list[str] = []
        depth = 1
        while True:
            token = self.current
            if token.kind is TokenKind.EOF:
                raise self.unexpected("')'")
            self.advance()
            if token.kind is TokenKind.PUNCT and token.value == "(":
                depth += 1
            elif token.kind is TokenKind.PUNCT and token.value == ")":
                depth -= 1
                if depth == 0:
                    return RegexCall(tuple(args), regex_token.position)
            args.append(token.text)


def parse(text: str) -> SelectQuery:
    """Parse SPARQL text into a SelectQuery AST"""
    query = Parser(text).parse_query()
    logger.debug("parsed query with %d triple pattern(s)", len(query.where.all_triples()))
    return query
