"""
Differential check runtime - shared between the CLI, the corpus runner and the fuzzer

One check parses and validates a query, translates it (or takes a forced
traversal), evaluates the traversal on the property graph and the query on
the graph's RDF view, then compares the two solution tables with
``solutions_equal``: as sequences when the query has an ORDER BY, otherwise
as multisets. Both sides enumerate in the same order, so sliced results
compare exactly too.
"""
import logging
from typing import Optional

from ..core.errors import Sparql2GremlinError
from ..core.graph import PropertyGraph
from ..core.rdf_view import pg_to_rdf_view
from ..core.solutions import diff_tables, solutions_equal
from ..engine.evaluator import eval_traversal
from ..gremlin.steps import Traversal
from ..oracle.evaluator import eval_sparql
from ..sparql.ast import SelectQuery
from ..sparql.parser import parse
from ..sparql.validator import validate
from ..translator.translate import translate_query
from .state import CheckOutcome, CheckStatus, CompareMode, HarnessCallbacks

logger = logging.getLogger(__name__)


def compare_mode(query: SelectQuery) -> CompareMode:
    return CompareMode.SEQUENCE if query.order_by else CompareMode.MULTISET


class DifferentialRuntime:
    """Runs the engine path and the oracle path for a query and compares them"""

    def __init__(self, callbacks: Optional[HarnessCallbacks] = None):
        self.callbacks = callbacks or HarnessCallbacks()

    def check(self, query_text: str, graph: PropertyGraph,
              traversal: Optional[Traversal] = None, label: str = "query") -> CheckOutcome:
        """
        Check one query against one graph.

        Args:
            query_text: SPARQL source
            graph: the property graph; the oracle runs on its RDF view
            traversal: evaluate this traversal instead of the translation
            label: name passed to the callbacks

        Returns:
            CheckOutcome with status PASS, MISMATCH or ERROR
        """
        if self.callbacks.on_entry_start:
            self.callbacks.on_entry_start(label)

        try:
            outcome = self._check(query_text, graph, traversal)
        except Sparql2GremlinError as e:
            outcome = CheckOutcome(CheckStatus.ERROR, query_text, traversal=traversal,
                                   code=e.code, message=e.describe())

        logger.debug("%s: %s (%s)", label, outcome.status.value, outcome.mode.value)
        if self.callbacks.on_entry_result:
            self.callbacks.on_entry_result(label, outcome)
        if outcome.status is CheckStatus.MISMATCH and self.callbacks.on_mismatch:
            self.callbacks.on_mismatch(label, outcome)
        return outcome

    def _check(self, query_text: str, graph: PropertyGraph,
               forced: Optional[Traversal]) -> CheckOutcome:
        query = validate(parse(query_text)).query
        traversal = forced if forced is not None else translate_query(query)
        data = pg_to_rdf_view(graph)

        engine = eval_traversal(traversal, graph)
        oracle = eval_sparql(query, data)

        if solutions_equal(engine, oracle):
            status, diff = CheckStatus.PASS, ""
        else:
            status, diff = CheckStatus.MISMATCH, diff_tables(engine, oracle).summary()
        return CheckOutcome(status, query_text, mode=compare_mode(query), traversal=traversal,
                            engine=engine, oracle=oracle, diff=diff)
