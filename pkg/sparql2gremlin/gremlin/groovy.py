"""
Gremlin-Groovy text for traversals, and a reader for exactly that text

The writer is deterministic; the reader accepts what the writer produces (plus
insignificant whitespace) and is what ``check --force-groovy`` uses to inject a
hand-edited traversal.
"""
import re
from dataclasses import dataclass
from typing import Callable, Union

from ..core.comparison import CompareOp, Direction
from ..core.errors import GroovyReadError, InvalidTerm
from ..core.terms import UNBOUND, INT64_MAX, INT64_MIN, Literal, LiteralKind, UnboundType
from .steps import (
    UNBOUND_MARKER,
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
    Predicate,
    Range,
    Select,
    Step,
    Traversal,
    UnionStep,
    V,
    Values,
    VarRef,
    Where,
)

_STRING_ESCAPES = str.maketrans({"\\": "\\\\", "'": "\\'", "\n": "\\n", "\r": "\\r", "\t": "\\t"})


# Writer

def quote(text: str) -> str:
    return "'" + text.translate(_STRING_ESCAPES) + "'"


def literal_to_groovy(value: Union[Literal, UnboundType]) -> str:
    if isinstance(value, UnboundType):
        return quote(UNBOUND_MARKER)
    if value.kind is LiteralKind.STRING:
        return quote(value.value)
    return value.lexical()


def _pred_to_groovy(pred: Pred) -> str:
    if isinstance(pred.value, VarRef):
        return f"P.{pred.op.gremlin}({quote(pred.value.name)})"
    return f"P.{pred.op.gremlin}({literal_to_groovy(pred.value)})"


def predicate_to_groovy(pred: Predicate) -> str:
    if isinstance(pred, OrPred):
        first, *rest = pred.preds
        return _pred_to_groovy(first) + "".join(f".or({_pred_to_groovy(p)})" for p in rest)
    return _pred_to_groovy(pred)


def _has_string_literal(pred: Predicate) -> bool:
    preds = pred.preds if isinstance(pred, OrPred) else (pred,)
    return any(isinstance(p.value, Literal) and p.value.kind is LiteralKind.STRING for p in preds)


def _nested(traversals) -> str:
    return ", ".join(_chain(t, "__") for t in traversals)


def step_to_groovy(step: Step) -> str:
    if isinstance(step, V):
        return "V()"
    if isinstance(step, Match):
        return f"match({_nested(step.traversals)})"
    if isinstance(step, UnionStep):
        return f"union({_nested(step.traversals)})"
    if isinstance(step, Coalesce):
        return f"coalesce({_nested(step.traversals)})"
    if isinstance(step, As):
        return f"as({quote(step.name)})"
    if isinstance(step, Out):
        return f"out({quote(step.label)})"
    if isinstance(step, Values):
        return f"values({quote(step.key)})"
    if isinstance(step, Label):
        return "label()"
    if isinstance(step, Has):
        return f"has({quote(step.key)}, {predicate_to_groovy(step.pred)})"
    if isinstance(step, HasLabel):
        return f"hasLabel({literal_to_groovy(step.value)})"
    if isinstance(step, HasId):
        return f"hasId({quote(step.id)})"
    if isinstance(step, Where):
        if _has_string_literal(step.pred):
            return f"where(__.select({quote(step.var)}).is({predicate_to_groovy(step.pred)}))"
        return f"where({quote(step.var)}, {predicate_to_groovy(step.pred)})"
    if isinstance(step, Constant):
        return f"constant({literal_to_groovy(step.value)})"
    if isinstance(step, Select):
        return "select(" + ",".join(quote(n) for n in step.names) + ")"
    if isinstance(step, Dedup):
        return "dedup()"
    if isinstance(step, Order):
        return "order()" + "".join(f".by({quote(n)}, {d.value})" for n, d in step.keys)
    if isinstance(step, Range):
        return f"range({step.lo}, {step.hi})"
    if isinstance(step, CountStep):
        return f"select({quote(step.counted)}).count().as({quote(step.alias)})"
    if isinstance(step, GroupCount):
        keys = "".join(f".by(__.select({quote(k)}))" for k in step.keys)
        return f"groupCount(){keys}.by(__.select({quote(step.counted)}).count()).as({quote(step.alias)})"
    raise TypeError(f"unknown step {step!r}")


def _chain(traversal: Traversal, source: str) -> str:
    return source + "".join("." + step_to_groovy(s) for s in traversal.steps)


def to_groovy(traversal: Traversal) -> str:
    """Gremlin-Groovy text, ``g.`` at the top and ``__.`` for nested traversals"""
    return _chain(traversal, "g")


# Reader

_TOKEN = re.compile(
    r"\s*(?:(?P<string>'(?:[^'\\\n]|\\.)*')"
    r"|(?P<number>-?[0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[.(),]))"
)
_UNESCAPE = {"\\": "\\", "'": "'", "n": "\n", "r": "\r", "t": "\t"}


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: object
    offset: int


def _read_tokens(text: str) -> list[_Tok]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            tokens.append(_Tok("eof", None, pos))
            return tokens
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise GroovyReadError(f"unexpected character {text[pos]!r} at offset {pos}")
        kind = match.lastgroup
        raw = match.group(kind)
        start = match.start(kind)
        if kind == "string":
            value: object = re.sub(r"\\(.)", lambda m: _unescape(m.group(1), start), raw[1:-1])
        elif kind == "number":
            value = float(raw) if ("." in raw or "e" in raw or "E" in raw) else int(raw)
        else:
            value = raw
        tokens.append(_Tok(kind, value, start))
        pos = match.end()


def _unescape(char: str, offset: int) -> str:
    if char not in _UNESCAPE:
        raise GroovyReadError(f"invalid escape '\\{char}' in string at offset {offset}")
    return _UNESCAPE[char]


class _GroovyReader:
    def __init__(self, text: str):
        self.tokens = _read_tokens(text)
        self.index = 0

    @property
    def current(self) -> _Tok:
        return self.tokens[self.index]

    def fail(self, message: str) -> GroovyReadError:
        return GroovyReadError(f"{message} at offset {self.current.offset}")

    def take(self, kind: str, value: object = None) -> _Tok:
        token = self.current
        if token.kind != kind or (value is not None and token.value != value):
            wanted = repr(value) if value is not None else kind
            raise self.fail(f"expected {wanted}, found {token.value!r}")
        self.index += 1
        return token

    def at(self, kind: str, value: object = None) -> bool:
        token = self.current
        return token.kind == kind and (value is None or token.value == value)

    def peek_is(self, offset: int, kind: str, value: object = None) -> bool:
        token = self.tokens[min(self.index + offset, len(self.tokens) - 1)]
        return token.kind == kind and (value is None or token.value == value)

    def string(self) -> str:
        return self.take("string").value

    def integer(self) -> int:
        token = self.take("number")
        if not isinstance(token.value, int):
            raise GroovyReadError(f"expected an integer at offset {token.offset}")
        return token.value

    def literal(self, allow_unbound: bool = True) -> Union[Literal, UnboundType]:
        token = self.current
        if token.kind == "string":
            self.index += 1
            if allow_unbound and token.value == UNBOUND_MARKER:
                return UNBOUND
            return Literal.string(token.value)
        if token.kind == "number":
            self.index += 1
            if isinstance(token.value, float):
                return Literal.double(token.value)
            if not INT64_MIN <= token.value <= INT64_MAX:
                raise GroovyReadError(f"integer out of range at offset {token.offset}")
            return Literal.integer(token.value)
        if token.kind == "name" and token.value in ("true", "false"):
            self.index += 1
            return Literal.boolean(token.value == "true")
        raise self.fail(f"expected a literal, found {token.value!r}")

    def plain_literal(self) -> Literal:
        return self.literal(allow_unbound=False)

    def read(self) -> Traversal:
        self.take("name", "g")
        traversal = self.chain()
        self.take("eof")
        return traversal

    def nested(self) -> Traversal:
        self.take("name", "__")
        return self.chain()

    def nested_list(self) -> tuple[Traversal, ...]:
        traversals = [self.nested()]
        while self.at("punct", ","):
            self.index += 1
            traversals.append(self.nested())
        return tuple(traversals)

    def chain(self) -> Traversal:
        steps: list[Step] = []
        while self.at("punct", "."):
            self.index += 1
            steps.append(self.step())
        if not steps:
            raise self.fail("expected a step")
        return Traversal(tuple(steps))

    def args(self, read: Callable[[], object]):
        self.take("punct", "(")
        value = read()
        self.take("punct", ")")
        return value

    def empty_args(self) -> None:
        self.take("punct", "(")
        self.take("punct", ")")

    def step(self) -> Step:
        name = self.take("name").value
        reader = _STEP_READERS.get(name)
        if reader is None:
            raise self.fail(f"unsupported step '{name}'")
        try:
            return reader(self)
        except (ValueError, InvalidTerm) as e:
            raise self.fail(str(e)) from e

    # predicates

    def pred(self, allow_varref: bool) -> Pred:
        self.take("name", "P")
        self.take("punct", ".")
        token = self.take("name")
        try:
            op = CompareOp.from_gremlin(token.value)
        except ValueError as e:
            raise GroovyReadError(f"{e} at offset {token.offset}") from e
        self.take("punct", "(")
        if allow_varref and self.at("string"):
            value: Union[Literal, VarRef] = VarRef(self.string())
        else:
            value = self.plain_literal()
        self.take("punct", ")")
        return Pred(op, value)

    def predicate(self, allow_varref: bool) -> Predicate:
        first = self.pred(allow_varref)
        preds = [first]
        while self.at("punct", ".") and self.peek_is(1, "name", "or"):
            self.index += 2
            preds.append(self.args(lambda: self.pred(False)))
        if len(preds) == 1:
            return first
        if any(isinstance(p.value, VarRef) for p in preds):
            raise self.fail("or() predicates compare against literals only")
        return OrPred(tuple(preds))

    # steps with structure beyond a single call

    def select_or_count(self) -> Step:
        self.take("punct", "(")
        names = [self.string()]
        while self.at("punct", ","):
            self.index += 1
            names.append(self.string())
        self.take("punct", ")")
        if self.at("punct", ".") and self.peek_is(1, "name", "count"):
            if len(names) != 1:
                raise self.fail("count() follows a single select key")
            self.index += 2
            self.empty_args()
            self.take("punct", ".")
            self.take("name", "as")
            alias = self.args(self.string)
            return CountStep(names[0], alias)
        return Select(tuple(names))

    def where(self) -> Where:
        self.take("punct", "(")
        if self.at("name", "__"):
            self.index += 1
            self.take("punct", ".")
            self.take("name", "select")
            var = self.args(self.string)
            self.take("punct", ".")
            self.take("name", "is")
            pred = self.args(lambda: self.predicate(False))
            if not _has_string_literal(pred):
                raise self.fail("where(__.select().is()) is only written for string comparands")
        else:
            var = self.string()
            self.take("punct", ",")
            pred = self.predicate(True)
            if _has_string_literal(pred):
                raise self.fail("string comparands are written as where(__.select().is())")
        self.take("punct", ")")
        return Where(var, pred)

    def order(self) -> Order:
        self.empty_args()
        keys = []
        while self.at("punct", ".") and self.peek_is(1, "name", "by"):
            self.index += 2
            self.take("punct", "(")
            name = self.string()
            self.take("punct", ",")
            direction = self.take("name").value
            if direction not in ("asc", "desc"):
                raise self.fail(f"unknown order direction '{direction}'")
            self.take("punct", ")")
            keys.append((name, Direction(direction)))
        return Order(tuple(keys))

    def group_count(self) -> GroupCount:
        self.empty_args()
        keys: list[str] = []
        while True:
            self.take("punct", ".")
            self.take("name", "by")
            self.take("punct", "(")
            self.take("name", "__")
            self.take("punct", ".")
            self.take("name", "select")
            name = self.args(self.string)
            if self.at("punct", "."):
                self.index += 1
                self.take("name", "count")
                self.empty_args()
                self.take("punct", ")")
                break
            self.take("punct", ")")
            keys.append(name)
        self.take("punct", ".")
        self.take("name", "as")
        alias = self.args(self.string)
        return GroupCount(tuple(keys), name, alias)

    def range_step(self) -> Range:
        self.take("punct", "(")
        lo = self.integer()
        self.take("punct", ",")
        hi = self.integer()
        self.take("punct", ")")
        return Range(lo, hi)

    def has(self) -> Has:
        self.take("punct", "(")
        key = self.string()
        self.take("punct", ",")
        pred = self.pred(False)
        self.take("punct", ")")
        return Has(key, pred)

    def no_args(self, step: Step) -> Step:
        self.empty_args()
        return step


_STEP_READERS: dict[str, Callable[[_GroovyReader], Step]] = {
    "V": lambda r: r.no_args(V()),
    "match": lambda r: Match(r.args(r.nested_list)),
    "union": lambda r: UnionStep(r.args(r.nested_list)),
    "coalesce": lambda r: Coalesce(r.args(r.nested_list)),
    "as": lambda r: As(r.args(r.string)),
    "out": lambda r: Out(r.args(r.string)),
    "values": lambda r: Values(r.args(r.string)),
    "label": lambda r: r.no_args(Label()),
    "has": lambda r: r.has(),
    "hasLabel": lambda r: HasLabel(r.args(r.plain_literal)),
    "hasId": lambda r: HasId(r.args(r.string)),
    "where": lambda r: r.where(),
    "constant": lambda r: Constant(r.args(r.literal)),
    "select": lambda r: r.select_or_count(),
    "dedup": lambda r: r.no_args(Dedup()),
    "order": lambda r: r.order(),
    "range": lambda r: r.range_step(),
    "groupCount": lambda r: r.group_count(),
}


def from_groovy(text: str) -> Traversal:
    """Read Groovy text in the form written by ``to_groovy``"""
    return _GroovyReader(text).read()

