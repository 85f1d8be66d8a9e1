"""
Reference SPARQL evaluator
"""

from .evaluator import bgp_join, eval_sparql

__all__ = ['eval_sparql', 'bgp_join']
