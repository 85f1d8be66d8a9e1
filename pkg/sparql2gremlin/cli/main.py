"""
CLI entry point for sparql2gremlin

Parses the command line, loads the configuration (environment, ``.env``,
flags), installs the log handler and dispatches to ``commands``. Every
package error becomes ``error: <CODE>: <message>`` on stderr and exit code 1.
"""
import argparse
import sys
import traceback
from typing import Optional, Sequence

from ..config import configure_logging, load_config, set_global_config
from ..config.settings import EMIT_CHOICES, FORMAT_CHOICES
from ..core.errors import Sparql2GremlinError
from .commands import COMMANDS, EXIT_ERROR, report_error

EPILOG = """
Examples:
  # Translate a query to Gremlin-Groovy and bytecode
  sparql2gremlin translate query.rq --emit both

  # Run a corpus query on its bundled dataset
  sparql2gremlin run --corpus C1 --format table

  # Compare the traversal result with the reference SPARQL result
  sparql2gremlin check query.rq --graph graph.json

  # Check all bundled corpus queries, then fuzz
  sparql2gremlin corpus
  sparql2gremlin fuzz --seed 42 --count 100

  # Interactive session on a bundled dataset
  sparql2gremlin repl --dataset commerce
"""


def _add_query_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("query", nargs="?", default=None, help="Path of a .rq query file")
    parser.add_argument("--corpus", metavar="ID", default=None,
                        help="Use the bundled corpus entry ID instead of a query file")


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", "-g", metavar="PATH", default=None, help="Graph file (JSON)")
    parser.add_argument("--dataset", metavar="NAME", default=None, help="Bundled dataset name")


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMAT_CHOICES, default=None,
                        help="Result format (default: tsv)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparql2gremlin",
        description="Translate SPARQL SELECT queries into Gremlin traversals and check them",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose output")
    parser.add_argument("--debug", action="store_true", help="Debug logging and tracebacks")
    parser.add_argument("--env-file", metavar="PATH", default=None, help="Load settings from this .env file")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    translate = sub.add_parser("translate", help="Print the Gremlin traversal of a query")
    _add_query_source(translate)
    translate.add_argument("--emit", choices=EMIT_CHOICES, default=None,
                           help="Groovy text, bytecode JSON, or both (default: groovy)")
    translate.add_argument("--out", "-o", metavar="PATH", default=None,
                           help="Write to PATH instead of stdout (a base name with --emit both)")

    run = sub.add_parser("run", help="Translate a query and run it on a graph")
    _add_query_source(run)
    _add_graph_source(run)
    _add_format(run)

    check = sub.add_parser("check", help="Compare the traversal result with the reference result")
    _add_query_source(check)
    _add_graph_source(check)
    _add_format(check)
    forced = check.add_mutually_exclusive_group()
    forced.add_argument("--force-groovy", metavar="PATH", default=None,
                        help="Evaluate this Groovy traversal instead of the translation")
    forced.add_argument("--force-bytecode", metavar="PATH", default=None,
                        help="Evaluate this bytecode traversal instead of the translation")

    corpus = sub.add_parser("corpus", help="Check every bundled corpus query")
    corpus.add_argument("--graph-dir", metavar="PATH", default=None, help="Directory of dataset graphs")
    corpus.add_argument("--list", action="store_true", help="List the corpus entries only")

    fuzz = sub.add_parser("fuzz", help="Randomized differential testing")
    fuzz.add_argument("--seed", type=int, default=0, help="Seed (default: 0)")
    fuzz.add_argument("--count", type=int, default=None, help="Number of query/graph pairs")
    fuzz.add_argument("--max-vertices", type=int, default=None, help="Largest random graph")

    repl = sub.add_parser("repl", help="Interactive query session on a graph")
    _add_graph_source(repl)
    _add_format(repl)

    datasets = sub.add_parser("datasets", help="List the bundled datasets")
    datasets.add_argument("--graph-dir", metavar="PATH", default=None, help="Directory of dataset graphs")

    export = sub.add_parser("export", help="Print the RDF view of a graph as N-Triples")
    _add_graph_source(export)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # usage errors exit 1, not argparse's 2
        return 0 if e.code in (0, None) else EXIT_ERROR

    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_ERROR

    try:
        config = load_config(args.env_file, verbose=args.verbose or None, debug=args.debug or None)
    except ValueError as e:
        print(f"error: ConfigError: {e}", file=sys.stderr)
        return EXIT_ERROR
    set_global_config(config)
    configure_logging(config.effective_log_level, config.colorize)

    try:
        return COMMANDS[args.command](args, config)
    except Sparql2GremlinError as e:
        report_error(e)
        if config.debug:
            traceback.print_exc()
        return EXIT_ERROR
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user", file=sys.stderr)
        return 130
    except Exception as e:
        print(f"error: InternalError: {e}", file=sys.stderr)
        if config.debug:
            traceback.print_exc()
        return EXIT_ERROR


def cli_main():
    """Entry point for the sparql2gremlin command-line script"""
    sys.exit(main())


if __name__ == "__main__":
    cli_main()
