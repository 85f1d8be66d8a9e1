"""
Step handler registry for the traversal engine

Each step type has one handler that maps the incoming traverser stream to the
outgoing one. Handlers register themselves with the ``register_step``
decorator when ``handlers`` is imported.
"""
from typing import TYPE_CHECKING, Callable, Dict

from ..core.errors import MalformedTraversal
from .traverser import Scope, Traverser

if TYPE_CHECKING:
    from .evaluator import Evaluation

StepHandler = Callable[[object, list[Traverser], "Evaluation", Scope], list[Traverser]]


class StepRegistry:
    """Registry for step handlers keyed by step type"""

    def __init__(self):
        self._handlers: Dict[type, StepHandler] = {}

    def register_step(self, step_type: type, handler: StepHandler):
        """Register a handler for a specific step type"""
        self._handlers[step_type] = handler

    def get_available_steps(self) -> list[str]:
        return sorted(t.__name__ for t in self._handlers)

    def execute(self, step, traversers: list[Traverser], evaluation: "Evaluation",
                scope: Scope) -> list[Traverser]:
        handler = self._handlers.get(type(step))
        if handler is None:
            raise MalformedTraversal(f"the engine cannot execute {type(step).__name__} steps")
        return handler(step, traversers, evaluation, scope)


# Global registry instance
_registry = StepRegistry()


def register_step(step_type: type):
    """Decorator for registering step handlers"""
    def decorator(handler: StepHandler):
        _registry.register_step(step_type, handler)
        return handler
    return decorator


def get_registry() -> StepRegistry:
    """Get the global step registry, loading the built-in handlers on first use"""
    discover_and_register_steps()
    return _registry


def get_registered_steps() -> list[str]:
    return get_registry().get_available_steps()


def discover_and_register_steps():
    # Importing the module runs its register_step decorators
    from . import handlers  # noqa: F401
