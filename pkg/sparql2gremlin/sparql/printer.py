"""
Canonical SPARQL text for a parsed query

IRIs are always written in full, so the prologue is informational only.
Each && or || chain is parenthesized once, which keeps re-parsing exact.
"""
from ..core.terms import Iri, Literal, LiteralKind, Term, Var
from .ast import (
    And,
    Comparison,
    CountAgg,
    Filter,
    FilterExpr,
    GroupPattern,
    OptionalPattern,
    Or,
    RegexCall,
    SelectQuery,
    Star,
    TriplePattern,
    UnionPattern,
    chain_operands,
)

_STRING_ESCAPES = str.maketrans({"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"})
INDENT = "  "


def term_to_sparql(term: Term) -> str:
    if isinstance(term, Var):
        return f"?{term.name}"
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, Literal):
        if term.kind is LiteralKind.STRING:
            return '"' + term.value.translate(_STRING_ESCAPES) + '"'
        return term.lexical()
    raise TypeError(f"cannot print term {term!r}")


def filter_to_sparql(expr: FilterExpr) -> str:
    if isinstance(expr, Comparison):
        return f"{term_to_sparql(expr.lhs)} {expr.op.value} {term_to_sparql(expr.rhs)}"
    if isinstance(expr, (And, Or)):
        joiner = " && " if isinstance(expr, And) else " || "
        return "(" + joiner.join(filter_to_sparql(o) for o in chain_operands(expr, type(expr))) + ")"
    if isinstance(expr, RegexCall):
        return f"REGEX({' '.join(expr.args)})"
    raise TypeError(f"cannot print filter {expr!r}")


def _group_lines(group: GroupPattern, depth: int) -> list[str]:
    pad = INDENT * depth
    lines = []
    for element in group.elements:
        if isinstance(element, TriplePattern):
            t = element.triple
            lines.append(f"{pad}{term_to_sparql(t.s)} {term_to_sparql(t.p)} {term_to_sparql(t.o)} .")
        elif isinstance(element, Filter):
            lines.append(f"{pad}FILTER({filter_to_sparql(element.expr)})")
        elif isinstance(element, OptionalPattern):
            lines.append(f"{pad}OPTIONAL {{")
            lines.extend(_group_lines(element.group, depth + 1))
            lines.append(f"{pad}}}")
        elif isinstance(element, UnionPattern):
            lines.append(f"{pad}{{")
            lines.extend(_group_lines(element.left, depth + 1))
            lines.append(f"{pad}}} UNION {{")
            lines.extend(_group_lines(element.right, depth + 1))
            lines.append(f"{pad}}}")
    return lines


def to_sparql(query: SelectQuery) -> str:
    """Render ``query`` so that ``parse(to_sparql(q)) == q``"""
    lines = [f"PREFIX {prefix}: <{iri.value}>" for prefix, iri in sorted(query.prologue.additions.items())]

    projection = query.projection
    if isinstance(projection, Star):
        head = "*"
    elif isinstance(projection, CountAgg):
        keys = "".join(f"?{name} " for name in projection.variables)
        head = f"{keys}(COUNT(?{projection.counted}) AS ?{projection.alias})"
    else:
        head = " ".join(f"?{name}" for name in projection.variables)
    distinct = "DISTINCT " if query.distinct else ""
    lines.append(f"SELECT {distinct}{head} WHERE {{")
    lines.extend(_group_lines(query.where, 1))
    lines.append("}")

    if query.group_by:
        lines.append("GROUP BY " + " ".join(f"?{name}" for name in query.group_by))
    if query.order_by:
        conditions = " ".join(f"{c.direction.value.upper()}(?{c.var})" for c in query.order_by)
        lines.append(f"ORDER BY {conditions}")
    if query.limit is not None:
        lines.append(f"LIMIT {query.limit}")
    if query.offset is not None:
        lines.append(f"OFFSET {query.offset}")
    return "\n".join(lines) + "\n"
