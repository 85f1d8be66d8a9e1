"""
Rendering of solution tables and check outcomes for the terminal
"""
import sys
from typing import Optional, TextIO

from rich.console import Console
from rich.table import Table

from ..core.solutions import SolutionTable, format_value, tsv_cell
from ..gremlin import to_groovy
from ..harness import CheckOutcome


def print_table(table: SolutionTable, fmt: str = "tsv", stream: Optional[TextIO] = None) -> None:
    """TSV (header, then one line per row) or a rich table"""
    stream = stream or sys.stdout
    if fmt == "table":
        pretty = Table(show_lines=False)
        for column in table.columns:
            pretty.add_column(column)
        for row in table.rows:
            pretty.add_row(*(format_value(v) for v in row))
        Console(file=stream).print(pretty)
        return
    print("\t".join(table.columns), file=stream)
    for row in table.rows:
        print("\t".join(tsv_cell(v) for v in row), file=stream)


def print_outcome(outcome: CheckOutcome, fmt: str = "tsv", stream: Optional[TextIO] = None) -> None:
    """Both tables and the diff summary of a failed check"""
    stream = stream or sys.stdout
    if outcome.traversal is not None:
        print(f"traversal: {to_groovy(outcome.traversal)}", file=stream)
    if outcome.engine is not None:
        print("engine:", file=stream)
        print_table(outcome.engine, fmt, stream)
    if outcome.oracle is not None:
        print("oracle:", file=stream)
        print_table(outcome.oracle, fmt, stream)
    print(f"diff: {outcome.diff}", file=stream)
