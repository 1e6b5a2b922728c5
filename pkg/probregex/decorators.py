import functools
import inspect
import logging
from collections.abc import Callable
from typing import Any

logger = logging.getLogger(__name__)


def log_command_invocation(func: Callable[..., Any]) -> Callable[..., Any]:
    """Log the CLI command name and its bound arguments before running it.

    ``axioms_check_command`` is reported as ``axioms-check``.
    """
    sig = inspect.signature(func)
    command = func.__name__.removesuffix("_command").replace("_", "-")

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        bound = sig.bind_partial(*args, **kwargs)
        bound.apply_defaults()
        logger.info(f"Command invoked: {command} with args: {dict(bound.arguments)}")
        return func(*args, **kwargs)

    return wrapper
