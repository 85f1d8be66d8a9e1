"""
Traversal steps and their two serializations, Gremlin-Groovy text and bytecode
"""

from .bytecode import from_bytecode, to_bytecode
from .groovy import from_groovy, to_groovy
from .steps import Step, Traversal

__all__ = [
    'Traversal',
    'Step',
    'to_groovy',
    'from_groovy',
    'to_bytecode',
    'from_bytecode',
]
