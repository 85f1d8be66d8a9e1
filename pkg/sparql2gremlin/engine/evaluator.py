"""
Traversal evaluation over an in-memory property graph

Steps run left to right over a list of traversers. Row-shaped steps
(``select``, ``count``, ``groupCount``) fix the output columns; ``order``
marks the result as ordered.
"""
import logging
from typing import Optional

from ..core.errors import MalformedTraversal
from ..core.graph import PropertyGraph
from ..core.solutions import SolutionTable
from ..gremlin.steps import Traversal, V
from .registry import StepRegistry, get_registry
from .traverser import TOP, Scope, Traverser

logger = logging.getLogger(__name__)


class Evaluation:
    """State of one evaluation: the graph, the handler registry and the output shape"""

    def __init__(self, graph: PropertyGraph, registry: Optional[StepRegistry] = None):
        self.graph = graph
        self.registry = registry or get_registry()
        self.columns: Optional[tuple[str, ...]] = None
        self.ordered = False

    def run(self, traversal: Traversal, traversers: list[Traverser], scope: Scope) -> list[Traverser]:
        for index, step in enumerate(traversal.steps):
            if isinstance(step, V) and not (scope.top and index == 0):
                raise MalformedTraversal("V() may only start a top-level traversal")
            traversers = self.registry.execute(step, traversers, self, scope)
        return traversers

    def table(self, traversers: list[Traverser]) -> SolutionTable:
        columns = self.columns or ()
        rows = [tuple(t.lookup(name) for name in columns) for t in traversers]
        return SolutionTable(columns, rows, ordered=self.ordered)


def eval_traversal(traversal: Traversal, graph: PropertyGraph) -> SolutionTable:
    """Execute ``traversal`` on ``graph``"""
    evaluation = Evaluation(graph)
    traversers = evaluation.run(traversal, [Traverser()], TOP)
    table = evaluation.table(traversers)
    logger.debug("engine produced %d row(s) over columns %s", len(table), list(table.columns))
    return table
