"""
Command implementations for the sparql2gremlin CLI

Every ``cmd_*`` function takes the parsed arguments and the loaded
configuration and returns the process exit code:

- 0: success
- 1: input, translation or evaluation error
- 2: engine and reference results disagree
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, TextIO

from ..config import Sparql2GremlinConfig
from ..core.errors import InputFileError, Sparql2GremlinError
from ..core.graph import PropertyGraph
from ..core.rdf_view import pg_to_rdf_view, rdf_view_to_ntriples
from ..engine import eval_traversal, read_graph
from ..fixtures import (
    FEATURE_DESCRIPTIONS,
    CorpusEntry,
    get_corpus_entry,
    get_graphs_dir,
    list_datasets,
    load_corpus,
    load_dataset,
    resolve_graphs_dir,
)
from ..gremlin import Traversal, from_bytecode, from_groovy, to_bytecode, to_groovy
from ..harness import CheckStatus, DifferentialRuntime, HarnessCallbacks, run_corpus, run_fuzz
from ..sparql import parse, validate
from ..translator import translate_query
from .output import print_outcome, print_table
from .repl import run_repl

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2


def report_error(error: Sparql2GremlinError, stream: Optional[TextIO] = None) -> None:
    """Print the one-line diagnostic ``error: <CODE>: <message>``"""
    print(f"error: {error.code}: {error.describe()}", file=stream or sys.stderr)


def _read_text(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(f"cannot read {what} {path}: {e.strerror or e}") from e


def _query_source(args: argparse.Namespace, config: Sparql2GremlinConfig) -> tuple[str, Optional[CorpusEntry]]:
    """Query text from a file or a corpus entry"""
    if getattr(args, "corpus", None):
        entry = get_corpus_entry(args.corpus, config.fixtures_dir)
        return entry.text, entry
    if not args.query:
        raise InputFileError("a query file or --corpus ID is required")
    return _read_text(args.query, "query file"), None


def _resolve_graph(args: argparse.Namespace, config: Sparql2GremlinConfig,
                   entry: Optional[CorpusEntry] = None) -> PropertyGraph:
    """``--graph`` wins, then ``--dataset``, then the corpus entry's dataset"""
    if getattr(args, "graph", None):
        return read_graph(args.graph)
    dataset = getattr(args, "dataset", None) or (entry.dataset if entry else None)
    if dataset is None:
        raise InputFileError("a graph is required: pass --graph PATH or --dataset NAME")
    return load_dataset(dataset, get_graphs_dir(config.fixtures_dir))


def _translate(text: str) -> Traversal:
    return translate_query(validate(parse(text)))


# translate / run / check

def cmd_translate(args: argparse.Namespace, config: Sparql2GremlinConfig) -> int:
    """Write the Groovy text and/or the bytecode of a query's traversal"""
    text, _ = _query_source(args, config)
    traversal = _translate(text)
    emit = args.emit or config.default_emit

    outputs: list[tuple[str, str]] = []
    if emit in ("groovy", "both"):
        outputs.append((".groovy", to_groovy(traversal)))
    if emit in ("bytecode", "both"):
        outputs.append((".gbc.json", to_bytecode(traversal)))

    if not args.out:
        for _, rendered in outputs:
            print(rendered)
        return EXIT_OK

    out = Path(args.out)
    for suffix, rendered in outputs:
        # with --emit both, --out is a base name and each form gets its own suffix
        target = out.with_name(out.name + suffix) if emit == "both" else out
        target.write_text(rendered + "\n", encoding="utf-8")
        logger.info("wrote %s", target)
    return EXIT_OK


def cmd_run(args: argparse.Namespace, config: Sparql2GremlinConfig) -> int:
    """Translate a query and evaluate the traversal on a graph"""
    text, entry = _query_source(args, config)
    traversal = _translate(text)
    graph = _resolve_graph(args, config, entry)
    if config.verbose:
        print(to_groovy(traversal), file=sys.stderr)
    print_table(eval_traversal(traversal, graph), args.format or config.default_format)
    return EXIT_OK


def _forced_traversal(args: argparse.Namespace) -> Optional[Traversal]:
    if args.force_groovy:
        return from_groovy(_read_text(args.force_groovy, "Groovy file"))
    if args.force_bytecode:
        return from_bytecode(_read_text(args.force_bytecode, "bytecode file"))
    return None


def cmd_check(args: argparse.Namespace, config: Sparql2GremlinConfig) -> int:
    """Compare the engine result with the reference result"""
    text, entry = _query_source(args, config)
    graph = _resolve_graph(args, config, entry)
    forced = _forced_traversal(args)

    outcome = DifferentialRuntime().check(text, graph, traversal=forced,
                                          label=entry.id if entry else "query")
    if outcome.status is CheckStatus.ERROR:
        print(f"error: {outcome.code}: {outcome.message}", file=sys.stderr)
        return EXIT_ERROR
    if outcome.status is CheckStatus.MISMATCH:
        print(f"MISMATCH ({outcome.mode.value})")
        print_outcome(outcome, args.format or config.default_format)
        return EXIT_MISMATCH
    rows = len(outcome.engine) if outcome.engine is not None else 0
    print(f"PASS {rows} rows ({outcome.mode.value})")
    return EXIT_OK


# corpus / fuzz

def cmd_corpus(args: argparse.Namespace, config: Sparql2GremlinConfig) -> int:
    """Run the differential check over every corpus entry"""
    entries = load_corpus(config.fixtures_dir)

    if args.list:
        for entry in entries:
            print(f"{entry.id}\t{entry.feature}\t{entry.dataset}")
        if config.verbose:
            for feature, description in FEATURE_DESCRIPTIONS.items():
                print(f"💡 {feature}: {description}", file=sys.stderr)
        return EXIT_OK

    graph_dir = resolve_graphs_dir(args.graph_dir, config.fixtures_dir)
    callbacks = HarnessCallbacks()
    if config.verbose:
        callbacks.on_entry_start = lambda label: logger.info("checking %s", label)

    report = run_corpus(entries, lambda name: load_dataset(name, graph_dir), DifferentialRuntime(callbacks))
    for result in report.results:
        print(result.line)
        if not result.outcome.passed:
            outcome = result.outcome
            if outcome.status is CheckStatus.ERROR:
                print(f"  error: {outcome.code}: {outcome.message}", file=sys.stderr)
            else:
                print(f"  {outcome.diff}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_fuzz(args: argparse.Namespace, config: Sparql2GremlinConfig) -> int:
    """Randomized differential testing, reproducible per seed"""
    count = config.fuzz_count if args.count is None else args.count
    max_vertices = config.fuzz_max_vertices if args.max_vertices is None else args.max_vertices
    if count < 1:
        print("error: usage: --count must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    if max_vertices < 1:
        print("error: usage: --max-vertices must be at least 1", file=sys.stderr)
        return EXIT_ERROR

    report = run_fuzz(args.seed, count, max_vertices)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_MISMATCH


# repl / datasets / export

def cmd_repl(args: argparse.Namespace, config: Sparql2GremlinConfig) -> int:
    graph = _resolve_graph(args, config)
    return run_repl(graph, fmt=args.format or config.default_format)


def cmd_datasets(args: argparse.Namespace, config: Sparql2GremlinConfig) -> int:
    """List the bundled graphs with their sizes"""
    graph_dir = resolve_graphs_dir(args.graph_dir, config.fixtures_dir)
    print("dataset\tvertices\tedges\ttriples")
    for name in list_datasets(graph_dir):
        graph = load_dataset(name, graph_dir)
        print(f"{name}\t{len(graph.vertices)}\t{len(graph.edges)}\t{len(pg_to_rdf_view(graph))}")
    return EXIT_OK


def cmd_export(args: argparse.Namespace, config: Sparql2GremlinConfig) -> int:
    """Print the RDF view of a graph as N-Triples"""
    graph = _resolve_graph(args, config)
    sys.stdout.write(rdf_view_to_ntriples(pg_to_rdf_view(graph)))
    return EXIT_OK


COMMANDS = {
    "translate": cmd_translate,
    "run": cmd_run,
    "check": cmd_check,
    "corpus": cmd_corpus,
    "fuzz": cmd_fuzz,
    "repl": cmd_repl,
    "datasets": cmd_datasets,
    "export": cmd_export,
}
