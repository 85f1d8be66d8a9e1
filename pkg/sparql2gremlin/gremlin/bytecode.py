"""
Bytecode: a traversal as an ordered list of instructions

Document shape::

    {"@type":"traversal","steps":[["V"],["match",{...}],["select","n"]]}

Each instruction is the operator name followed by its flattened arguments.
Output is compact JSON with a fixed key order, so equal traversals always
serialize to identical bytes. Encoders and decoders are registered per step
with the ``encodes`` / ``decodes`` decorators.
"""
import json
import logging
from typing import Any, Callable, Optional, Union

from ..core.comparison import CompareOp, Direction
from ..core.errors import BytecodeDecodeError, InvalidTerm
from ..core.terms import UNBOUND, Literal, LiteralKind, UnboundType
from .steps import (
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

logger = logging.getLogger(__name__)

_ENCODERS: dict[type, Callable[[Any], list]] = {}
_DECODERS: dict[str, Callable[["_Args"], Step]] = {}


def encodes(step_type: type):
    def decorator(func):
        _ENCODERS[step_type] = func
        return func
    return decorator


def decodes(op: str):
    def decorator(func):
        _DECODERS[op] = func
        return func
    return decorator


# Encoding

def _literal_json(value: Literal) -> Union[str, int, float, bool]:
    if value.kind is LiteralKind.DOUBLE:
        return float(value.value)
    return value.value


def _pred_json(pred: Predicate) -> dict:
    if isinstance(pred, OrPred):
        return {"@type": "P", "op": "or", "preds": [_pred_json(p) for p in pred.preds]}
    if isinstance(pred.value, VarRef):
        value: Any = {"@type": "varref", "name": pred.value.name}
    else:
        value = _literal_json(pred.value)
    return {"@type": "P", "op": pred.op.gremlin, "value": value}


def traversal_json(traversal: Traversal) -> dict:
    steps = []
    for step in traversal.steps:
        encoder = _ENCODERS.get(type(step))
        if encoder is None:
            raise TypeError(f"no bytecode encoder for {type(step).__name__}")
        steps.append(encoder(step))
    return {"@type": "traversal", "steps": steps}


@encodes(V)
def _encode_v(step: V) -> list:
    return ["V"]


@encodes(Match)
def _encode_match(step: Match) -> list:
    return ["match", *(traversal_json(t) for t in step.traversals)]


@encodes(UnionStep)
def _encode_unionstep(step: UnionStep) -> list:
    return ["union", *(traversal_json(t) for t in step.traversals)]


@encodes(Coalesce)
def _encode_coalesce(step: Coalesce) -> list:
    return ["coalesce", *(traversal_json(t) for t in step.traversals)]


@encodes(As)
def _encode_as(step: As) -> list:
    return ["as", step.name]


@encodes(Out)
def _encode_out(step: Out) -> list:
    return ["out", step.label]


@encodes(Values)
def _encode_values(step: Values) -> list:
    return ["values", step.key]


@encodes(Label)
def _encode_label(step: Label) -> list:
    return ["label"]


@encodes(Has)
def _encode_has(step: Has) -> list:
    return ["has", step.key, _pred_json(step.pred)]


@encodes(HasLabel)
def _encode_haslabel(step: HasLabel) -> list:
    return ["hasLabel", _literal_json(step.value)]


@encodes(HasId)
def _encode_hasid(step: HasId) -> list:
    return ["hasId", step.id]


@encodes(Where)
def _encode_where(step: Where) -> list:
    return ["where", step.var, _pred_json(step.pred)]


@encodes(Constant)
def _encode_constant(step: Constant) -> list:
    if isinstance(step.value, UnboundType):
        return ["constant", {"@type": "unbound"}]
    return ["constant", _literal_json(step.value)]


@encodes(Select)
def _encode_select(step: Select) -> list:
    return ["select", *step.names]


@encodes(Dedup)
def _encode_dedup(step: Dedup) -> list:
    return ["dedup"]


@encodes(Order)
def _encode_order(step: Order) -> list:
    flat: list = ["order"]
    for name, direction in step.keys:
        flat += [name, direction.value]
    return flat


@encodes(Range)
def _encode_range(step: Range) -> list:
    return ["range", step.lo, step.hi]


@encodes(CountStep)
def _encode_countstep(step: CountStep) -> list:
    return ["count", step.counted, step.alias]


@encodes(GroupCount)
def _encode_groupcount(step: GroupCount) -> list:
    return ["groupCount", step.counted, step.alias, *step.keys]


def to_bytecode(traversal: Traversal) -> str:
    """Compact, byte-stable JSON bytecode document"""
    return json.dumps(traversal_json(traversal), separators=(",", ":"), ensure_ascii=False)


# Decoding

class _Args:
    """Arguments of one instruction, with the JSON path used in error messages"""

    def __init__(self, items: list, path: str):
        self.items = items
        self.path = path
        self.index = 1

    def fail(self, message: str, index: Optional[int] = None) -> BytecodeDecodeError:
        where = self.path if index is None else f"{self.path}[{index}]"
        return BytecodeDecodeError(message, where)

    def _next(self, what: str):
        if self.index >= len(self.items):
            raise self.fail(f"missing {what}", self.index)
        value = self.items[self.index]
        self.index += 1
        return value, self.index - 1

    def remaining(self) -> int:
        return len(self.items) - self.index

    def string(self, what: str = "string argument") -> str:
        value, index = self._next(what)
        if not isinstance(value, str):
            raise self.fail(f"expected {what}, got {type(value).__name__}", index)
        return value

    def integer(self, what: str = "integer argument") -> int:
        value, index = self._next(what)
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(f"expected {what}, got {type(value).__name__}", index)
        return value

    def literal(self) -> Literal:
        value, index = self._next("literal")
        return _literal_from(value, f"{self.path}[{index}]")

    def object(self, what: str) -> tuple[Any, str]:
        value, index = self._next(what)
        return value, f"{self.path}[{index}]"

    def traversals(self) -> tuple[Traversal, ...]:
        traversals = []
        while self.remaining():
            value, path = self.object("traversal")
            traversals.append(_traversal_from(value, path))
        if not traversals:
            raise self.fail("expected at least one traversal argument", self.index)
        return tuple(traversals)

    def done(self) -> None:
        if self.remaining():
            raise self.fail("unexpected extra argument", self.index)


def _literal_from(value: Any, path: str) -> Literal:
    if isinstance(value, (bool, int, float, str)):
        try:
            return Literal.from_python(value)
        except InvalidTerm as e:
            raise BytecodeDecodeError(e.message, path) from e
    raise BytecodeDecodeError(f"expected a literal, got {type(value).__name__}", path)


def _expect_object(value: Any, type_name: str, keys: tuple[str, ...], path: str) -> dict:
    if not isinstance(value, dict):
        raise BytecodeDecodeError(f"expected a {type_name} object", path)
    if value.get("@type") != type_name:
        raise BytecodeDecodeError(f"expected @type {type_name!r}", path)
    if set(value) != {"@type", *keys}:
        raise BytecodeDecodeError(f"{type_name} object must have exactly the keys @type, {', '.join(keys)}", path)
    return value


def _pred_from(value: Any, path: str, allow_varref: bool = False, allow_or: bool = True) -> Predicate:
    if isinstance(value, dict) and value.get("op") == "or" and allow_or:
        obj = _expect_object(value, "P", ("op", "preds"), path)
        preds = obj["preds"]
        if not isinstance(preds, list) or len(preds) < 2:
            raise BytecodeDecodeError("or predicate needs a list of at least two predicates", f"{path}.preds")
        return OrPred(tuple(_pred_from(p, f"{path}.preds[{i}]", allow_or=False) for i, p in enumerate(preds)))

    obj = _expect_object(value, "P", ("op", "value"), path)
    try:
        op = CompareOp.from_gremlin(obj["op"])
    except (ValueError, TypeError) as e:
        raise BytecodeDecodeError(f"unknown predicate operator {obj['op']!r}", f"{path}.op") from e
    rhs = obj["value"]
    if isinstance(rhs, dict) and allow_varref:
        ref = _expect_object(rhs, "varref", ("name",), f"{path}.value")
        if not isinstance(ref["name"], str):
            raise BytecodeDecodeError("varref name must be a string", f"{path}.value.name")
        return Pred(op, VarRef(ref["name"]))
    return Pred(op, _literal_from(rhs, f"{path}.value"))


def _traversal_from(value: Any, path: str) -> Traversal:
    obj = _expect_object(value, "traversal", ("steps",), path)
    steps = obj["steps"]
    if not isinstance(steps, list):
        raise BytecodeDecodeError("steps must be a list", f"{path}.steps")
    decoded = []
    for i, instruction in enumerate(steps):
        step_path = f"{path}.steps[{i}]"
        if not isinstance(instruction, list) or not instruction:
            raise BytecodeDecodeError("instruction must be a non-empty list", step_path)
        op = instruction[0]
        decoder = _DECODERS.get(op) if isinstance(op, str) else None
        if decoder is None:
            raise BytecodeDecodeError(f"unknown operator {op!r}", f"{step_path}[0]")
        args = _Args(instruction, step_path)
        try:
            step = decoder(args)
        except ValueError as e:
            raise BytecodeDecodeError(str(e), step_path) from e
        args.done()
        decoded.append(step)
    return Traversal(tuple(decoded))


@decodes("V")
def _decode_v(args: _Args) -> Step:
    return V()


@decodes("match")
def _decode_match(args: _Args) -> Step:
    return Match(args.traversals())


@decodes("union")
def _decode_union(args: _Args) -> Step:
    return UnionStep(args.traversals())


@decodes("coalesce")
def _decode_coalesce(args: _Args) -> Step:
    return Coalesce(args.traversals())


@decodes("as")
def _decode_as(args: _Args) -> Step:
    return As(args.string("label name"))


@decodes("out")
def _decode_out(args: _Args) -> Step:
    return Out(args.string("edge label"))


@decodes("values")
def _decode_values(args: _Args) -> Step:
    return Values(args.string("property key"))


@decodes("label")
def _decode_label(args: _Args) -> Step:
    return Label()


@decodes("has")
def _decode_has(args: _Args) -> Step:
    key = args.string("property key")
    value, path = args.object("predicate")
    return Has(key, _pred_from(value, path, allow_or=False))


@decodes("hasLabel")
def _decode_haslabel(args: _Args) -> Step:
    return HasLabel(args.literal())


@decodes("hasId")
def _decode_hasid(args: _Args) -> Step:
    return HasId(args.string("vertex id"))


@decodes("where")
def _decode_where(args: _Args) -> Step:
    var = args.string("variable name")
    value, path = args.object("predicate")
    return Where(var, _pred_from(value, path, allow_varref=True))


@decodes("constant")
def _decode_constant(args: _Args) -> Step:
    value, path = args.object("constant value")
    if isinstance(value, dict):
        _expect_object(value, "unbound", (), path)
        return Constant(UNBOUND)
    return Constant(_literal_from(value, path))


@decodes("select")
def _decode_select(args: _Args) -> Step:
    names = []
    while args.remaining():
        names.append(args.string("column name"))
    return Select(tuple(names))


@decodes("dedup")
def _decode_dedup(args: _Args) -> Step:
    return Dedup()


@decodes("order")
def _decode_order(args: _Args) -> Step:
    keys = []
    while args.remaining():
        name = args.string("order key")
        direction = args.string("order direction")
        if direction not in ("asc", "desc"):
            raise args.fail(f"unknown order direction {direction!r}", args.index - 1)
        keys.append((name, Direction(direction)))
    return Order(tuple(keys))


@decodes("range")
def _decode_range(args: _Args) -> Step:
    lo = args.integer("low bound")
    hi = args.integer("high bound")
    return Range(lo, hi)


@decodes("count")
def _decode_count(args: _Args) -> Step:
    return CountStep(args.string("counted variable"), args.string("alias"))


@decodes("groupCount")
def _decode_groupcount(args: _Args) -> Step:
    counted = args.string("counted variable")
    alias = args.string("alias")
    keys = []
    while args.remaining():
        keys.append(args.string("group key"))
    return GroupCount(tuple(keys), counted, alias)


def from_bytecode(document: str) -> Traversal:
    """Decode a bytecode document; errors name the JSON path of the bad element"""
    try:
        value = json.loads(document)
    except json.JSONDecodeError as e:
        raise BytecodeDecodeError(f"not valid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from e
    traversal = _traversal_from(value, "$")
    logger.debug("decoded bytecode with %d top-level step(s)", len(traversal))
    return traversal

