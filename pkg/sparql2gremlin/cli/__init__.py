"""
CLI interface for sparql2gremlin

This package provides the ``sparql2gremlin`` command:
- main: argument parsing, configuration and dispatch
- commands: translate, run, check, corpus, fuzz, datasets, export
- repl: the interactive query session
"""

from .main import cli_main, main

__all__ = ['cli_main', 'main']
