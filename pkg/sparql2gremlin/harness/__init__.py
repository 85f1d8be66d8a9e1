"""
Differential testing: the translated traversal on the property graph against
the reference evaluator on the graph's RDF view
"""

from .corpus import CorpusReport, CorpusResult, run_corpus
from .fuzz import FuzzReport, random_graph, random_query, run_fuzz
from .runtime import DifferentialRuntime, compare_mode
from .state import CheckOutcome, CheckStatus, ClassTally, CompareMode, HarnessCallbacks

__all__ = [
    'DifferentialRuntime',
    'HarnessCallbacks',
    'CheckOutcome',
    'CheckStatus',
    'CompareMode',
    'ClassTally',
    'compare_mode',
    'run_corpus',
    'CorpusReport',
    'CorpusResult',
    'run_fuzz',
    'FuzzReport',
    'random_graph',
    'random_query',
]
