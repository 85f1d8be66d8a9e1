"""
Runs the differential check over every corpus entry
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from ..core.errors import Sparql2GremlinError
from ..core.graph import PropertyGraph
from ..fixtures import CorpusEntry
from .runtime import DifferentialRuntime
from .state import CheckOutcome, CheckStatus, ClassTally

logger = logging.getLogger(__name__)

GraphLoader = Callable[[str], PropertyGraph]


@dataclass
class CorpusResult:
    entry: CorpusEntry
    outcome: CheckOutcome

    @property
    def line(self) -> str:
        return f"{self.entry.id} {'PASS' if self.outcome.passed else 'FAIL'}"


@dataclass
class CorpusReport:
    results: list[CorpusResult] = field(default_factory=list)
    tally: ClassTally = field(default_factory=ClassTally)

    @property
    def passed(self) -> bool:
        return all(r.outcome.passed for r in self.results)

    def failures(self) -> list[CorpusResult]:
        return [r for r in self.results if not r.outcome.passed]


def run_corpus(entries: Iterable[CorpusEntry], load_graph: GraphLoader,
               runtime: Optional[DifferentialRuntime] = None) -> CorpusReport:
    """
    Check every entry against its dataset.

    A dataset that fails to load turns each of its entries into an ERROR
    outcome rather than aborting the run.
    """
    runtime = runtime or DifferentialRuntime()
    graphs: dict[str, PropertyGraph] = {}
    graph_errors: dict[str, Sparql2GremlinError] = {}
    report = CorpusReport()

    for entry in entries:
        if entry.dataset not in graphs and entry.dataset not in graph_errors:
            try:
                graphs[entry.dataset] = load_graph(entry.dataset)
            except Sparql2GremlinError as e:
                logger.warning("dataset %s failed to load: %s", entry.dataset, e)
                graph_errors[entry.dataset] = e

        if entry.dataset in graph_errors:
            error = graph_errors[entry.dataset]
            outcome = CheckOutcome(CheckStatus.ERROR, entry.text, code=error.code, message=error.describe())
        else:
            outcome = runtime.check(entry.text, graphs[entry.dataset], label=entry.id)

        report.results.append(CorpusResult(entry, outcome))
        report.tally.record(entry.feature, outcome)
    return report
