"""
Line-based REPL: write a query, end it with a lone ``;``, see the traversal
and its result on the loaded graph
"""
import logging
import sys
from typing import Callable, Optional, TextIO

from ..core.errors import Sparql2GremlinError
from ..core.graph import PropertyGraph
from ..engine import eval_traversal
from ..gremlin import to_groovy
from ..sparql import parse, validate
from ..translator import translate_query
from .output import print_table

logger = logging.getLogger(__name__)

PROMPT = "sparql> "
CONTINUATION = "   ...> "
TERMINATOR = ";"

HELP = """\
Enter a SELECT query over several lines and finish it with a line holding only ';'.
Predicates: v:<key> (vertex property), v:label (vertex label), e:<label> (edge).
Commands:
  :help   show this text
  :quit   leave the session"""


class Repl:
    """One session over one graph; ``input_fn`` and ``out`` are injectable for tests"""

    def __init__(self, graph: PropertyGraph, input_fn: Callable[[str], str] = input,
                 out: Optional[TextIO] = None, fmt: str = "tsv"):
        self.graph = graph
        self.input_fn = input_fn
        self.out = out or sys.stdout
        self.fmt = fmt
        self.buffer: list[str] = []

    def write(self, text: str = "") -> None:
        print(text, file=self.out)

    def execute(self, text: str) -> None:
        """Translate and run one query; diagnostics never end the session"""
        try:
            traversal = translate_query(validate(parse(text)))
            self.write(to_groovy(traversal))
            table = eval_traversal(traversal, self.graph)
        except Sparql2GremlinError as e:
            self.write(f"error: {e.code}: {e.describe()}")
            return
        except Exception as e:  # keep the session alive on anything else
            logger.debug("query failed", exc_info=True)
            self.write(f"error: InternalError: {e}")
            return

        print_table(table, self.fmt, self.out)
        self.write(f"({len(table)} rows)")

    def run(self) -> int:
        self.write(f"🔎 sparql2gremlin REPL: {len(self.graph.vertices)} vertices, "
                   f"{len(self.graph.edges)} edges. Type :help for help.")
        while True:
            try:
                line = self.input_fn(CONTINUATION if self.buffer else PROMPT)
            except EOFError:
                self.write()
                return 0
            except KeyboardInterrupt:
                self.write()
                self.buffer.clear()
                continue

            stripped = line.strip()
            if stripped == ":quit":
                return 0
            if stripped == ":help" and not self.buffer:
                self.write(HELP)
                continue
            if stripped == TERMINATOR:
                text = "\n".join(self.buffer)
                self.buffer.clear()
                if text.strip():
                    self.execute(text)
                continue
            self.buffer.append(line)


def run_repl(graph: PropertyGraph, input_fn: Callable[[str], str] = input,
             out: Optional[TextIO] = None, fmt: str = "tsv") -> int:
    return Repl(graph, input_fn, out, fmt).run()
