"""
In-memory property graph engine
"""

from .evaluator import Evaluation, eval_traversal
from .loader import dump_graph, load_graph, read_graph
from .registry import get_registered_steps, get_registry, register_step

__all__ = [
    'load_graph',
    'read_graph',
    'dump_graph',
    'eval_traversal',
    'Evaluation',
    'register_step',
    'get_registry',
    'get_registered_steps',
]
