"""
sparql2gremlin - SPARQL SELECT queries as Gremlin pattern-matching traversals

Translates a subset of SPARQL 1.0 SELECT into match()-centric Gremlin
traversals, writes them as Gremlin-Groovy text or bytecode, and checks the
translation by running it on an in-memory property graph against a reference
SPARQL evaluator over the graph's RDF view.

## Quick Start

### Library Usage
```python
from sparql2gremlin import Sparql2Gremlin

s2g = Sparql2Gremlin()

# Translate a query
print(s2g.to_groovy("SELECT ?n WHERE { ?p v:name ?n }"))
# g.V().match(__.as('p').values('name').as('n')).select('n')

# Run it on a bundled dataset
table = s2g.run("SELECT ?n WHERE { ?p v:name ?n }", dataset="g0")

# Compare engine and reference results
outcome = s2g.check("SELECT ?a ?b WHERE { ?a e:knows ?b }", dataset="g0")
assert outcome.passed
```

### CLI Usage
```bash
sparql2gremlin translate query.rq --emit both
sparql2gremlin run query.rq --graph graph.json
sparql2gremlin check --corpus C1
sparql2gremlin corpus
sparql2gremlin fuzz --seed 42 --count 100
sparql2gremlin repl --graph graph.json
```

## Package Contents

- **sparql2gremlin.core**: terms, property graph, RDF view, solution tables
- **sparql2gremlin.sparql**: lexer, parser, printer, validation
- **sparql2gremlin.translator**: SPARQL to traversal
- **sparql2gremlin.gremlin**: steps, Groovy text, bytecode
- **sparql2gremlin.engine**: property graph loader and traversal engine
- **sparql2gremlin.oracle**: reference SPARQL evaluator
- **sparql2gremlin.harness**: differential checks, corpus runner, fuzzer
- **sparql2gremlin.fixtures**: bundled graphs and the feature corpus
- **sparql2gremlin.config**: configuration and logging
"""
from typing import Optional, Union

from .config import Sparql2GremlinConfig, load_config
from .core.graph import PropertyGraph
from .core.solutions import SolutionTable
from .engine import eval_traversal, load_graph
from .fixtures import get_graphs_dir, load_dataset
from .gremlin import Traversal, to_bytecode, to_groovy
from .harness import CheckOutcome, DifferentialRuntime, HarnessCallbacks
from .sparql import parse, validate
from .translator import translate_query

__version__ = "0.1.0"


class Sparql2Gremlin:
    """
    Main library API: translate, run and check queries.

    Graphs can be given as a ``PropertyGraph``, as a graph document string,
    or by bundled dataset name through ``dataset=``.
    """

    def __init__(self, config: Optional[Sparql2GremlinConfig] = None,
                 callbacks: Optional[HarnessCallbacks] = None):
        """
        Initialize sparql2gremlin.

        Args:
            config: Optional configuration override
            callbacks: Optional progress callbacks for checks
        """
        self.config = config or load_config()
        self.runtime = DifferentialRuntime(callbacks)

    def translate(self, query_text: str) -> Traversal:
        """Parse, validate and translate a query"""
        return translate_query(validate(parse(query_text)))

    def to_groovy(self, query_text: str) -> str:
        return to_groovy(self.translate(query_text))

    def to_bytecode(self, query_text: str) -> str:
        return to_bytecode(self.translate(query_text))

    def _graph(self, graph: Union[PropertyGraph, str, None], dataset: Optional[str]) -> PropertyGraph:
        if isinstance(graph, PropertyGraph):
            return graph
        if isinstance(graph, str):
            return load_graph(graph)
        if dataset is not None:
            return load_dataset(dataset, get_graphs_dir(self.config.fixtures_dir))
        raise ValueError("either graph or dataset is required")

    def run(self, query_text: str, graph: Union[PropertyGraph, str, None] = None,
            dataset: Optional[str] = None) -> SolutionTable:
        """Translate a query and evaluate the traversal on a graph"""
        return eval_traversal(self.translate(query_text), self._graph(graph, dataset))

    def check(self, query_text: str, graph: Union[PropertyGraph, str, None] = None,
              dataset: Optional[str] = None) -> CheckOutcome:
        """Compare the engine result with the reference result for a query"""
        return self.runtime.check(query_text, self._graph(graph, dataset))


__all__ = [
    'Sparql2Gremlin',
    'Sparql2GremlinConfig',
    'load_config',
    '__version__',
]
