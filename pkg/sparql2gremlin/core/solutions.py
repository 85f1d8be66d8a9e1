"""
Solution tables: the common result type of the engine and the oracle
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .comparison import canonical
from .prefixes import vertex_iri
from .terms import Iri, Literal, LiteralKind, UnboundType, Value, VertexRef


@dataclass(frozen=True)
class SolutionTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[Value, ...], ...] = field(default_factory=tuple)
    ordered: bool = False

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if len(set(self.columns)) != len(self.columns):
            raise ValueError(f"duplicate column names: {self.columns}")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row {row!r} does not match columns {self.columns}")

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list[Value]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def aligned_rows(self, columns: Sequence[str]) -> list[tuple[Value, ...]]:
        """Rows re-ordered to ``columns`` with values canonicalized"""
        indices = [self.columns.index(c) for c in columns]
        return [tuple(canonical(row[i]) for i in indices) for row in self.rows]


def solutions_equal(a: SolutionTable, b: SolutionTable) -> bool:
    if set(a.columns) != set(b.columns):
        return False
    left = a.aligned_rows(a.columns)
    right = b.aligned_rows(a.columns)
    if a.ordered and b.ordered:
        return left == right
    return Counter(left) == Counter(right)


@dataclass
class TableDiff:
    """Summary of why two tables differ"""
    column_mismatch: Optional[tuple[tuple[str, ...], tuple[str, ...]]] = None
    only_left: list[tuple[Value, ...]] = field(default_factory=list)
    only_right: list[tuple[Value, ...]] = field(default_factory=list)
    first_position: Optional[int] = None

    @property
    def is_empty(self) -> bool:
        return (self.column_mismatch is None and not self.only_left
                and not self.only_right and self.first_position is None)

    def summary(self, left_name: str = "engine", right_name: str = "oracle") -> str:
        if self.column_mismatch is not None:
            left, right = self.column_mismatch
            return f"columns differ: {left_name}={list(left)} {right_name}={list(right)}"
        lines = []
        if self.only_left:
            lines.append(f"{len(self.only_left)} row(s) only in {left_name}")
            lines.extend("  + " + "\t".join(tsv_cell(v) for v in row) for row in self.only_left)
        if self.only_right:
            lines.append(f"{len(self.only_right)} row(s) only in {right_name}")
            lines.extend("  - " + "\t".join(tsv_cell(v) for v in row) for row in self.only_right)
        if self.first_position is not None:
            lines.append(f"row order differs first at position {self.first_position}")
        return "\n".join(lines) if lines else "tables are equal"


def diff_tables(a: SolutionTable, b: SolutionTable) -> TableDiff:
    if set(a.columns) != set(b.columns):
        return TableDiff(column_mismatch=(a.columns, b.columns))
    left = a.aligned_rows(a.columns)
    right = b.aligned_rows(a.columns)
    left_count, right_count = Counter(left), Counter(right)
    diff = TableDiff(
        only_left=list((left_count - right_count).elements()),
        only_right=list((right_count - left_count).elements()),
    )
    if not diff.only_left and not diff.only_right and a.ordered and b.ordered:
        for position, (x, y) in enumerate(zip(left, right)):
            if x != y:
                diff.first_position = position
                break
    return diff


def format_value(value: Value) -> str:
    """Plain text for TSV and tables: Unbound is empty, vertices print as their IRI"""
    if isinstance(value, UnboundType):
        return ""
    if isinstance(value, VertexRef):
        return vertex_iri(value.id).value
    if isinstance(value, Iri):
        return value.value
    if isinstance(value, Literal):
        if value.kind is LiteralKind.STRING:
            return value.value
        return value.lexical()
    return str(value)


_TSV_ESCAPES = str.maketrans({"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"})


def tsv_cell(value: Value) -> str:
    """``format_value`` escaped so the cell stays on one TSV line and column"""
    return format_value(value).translate(_TSV_ESCAPES)
