"""Logging setup for the probregex command-line surface."""

import logging
import sys

from probregex.constants import LOG_DATE_FORMAT, LOG_FORMAT, TOOLKIT_NAME

# Created before any handler manipulation so failures can still be reported
_module_logger = logging.getLogger(__name__)


def _standard_formatter() -> logging.Formatter:
    return logging.Formatter(fmt=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)


def _is_rich_handler(handler: logging.Handler) -> bool:
    """Tell whether a handler comes from Rich, judging by class name or module."""
    try:
        class_name = handler.__class__.__name__
        module_name = getattr(handler.__class__, "__module__", "")
    except (AttributeError, TypeError) as e:
        _module_logger.debug(f"Skipping handler inspection due to error: {e}")
        return False
    return any(isinstance(name, str) and "rich" in name.lower() for name in (class_name, module_name))


def replace_rich_handlers_with_standard() -> int:
    """Swap every Rich handler on every known logger for a plain stderr StreamHandler.

    Typer pulls in Rich, whose multi-line records interleave badly with the
    results the CLI prints on stdout. The replacement keeps the original level.

    Returns:
        The number of handlers that were replaced.
    """
    loggers = [logging.getLogger()]
    loggers.extend(
        logging.getLogger(name) for name in logging.Logger.manager.loggerDict if logging.getLogger(name) is not loggers[0]
    )

    replaced = 0
    for logger in loggers:
        for handler in [h for h in logger.handlers if _is_rich_handler(h)]:
            try:
                logger.removeHandler(handler)
                new_handler = logging.StreamHandler(sys.stderr)
                new_handler.setLevel(handler.level)
                new_handler.setFormatter(_standard_formatter())
                logger.addHandler(new_handler)
                replaced += 1
            except (AttributeError, ValueError, OSError, RuntimeError) as e:
                _module_logger.warning(f"Failed to replace Rich handler {handler}: {e}")

    if replaced:
        _module_logger.info(f"Replaced {replaced} Rich logging handlers with standard handlers")
    return replaced


def configure_logging(level: str | int = "WARNING") -> logging.Logger:
    """Route the package logger to stderr with the standard single-line format.

    Calling it twice does not stack handlers.
    """
    package_logger = logging.getLogger(TOOLKIT_NAME)
    package_logger.setLevel(level.upper() if isinstance(level, str) else level)

    # stderr may have been swapped and closed since the last call; never flush the old stream
    for owned in [h for h in package_logger.handlers if getattr(h, "_probregex_owned", False)]:
        package_logger.removeHandler(owned)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_standard_formatter())
    handler._probregex_owned = True  # type: ignore[attr-defined]
    package_logger.addHandler(handler)

    replace_rich_handlers_with_standard()
    return package_logger
