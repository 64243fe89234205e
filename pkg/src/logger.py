"""
Project logger.

Modules log through one shared ``KEO`` logger:

    ```python
    from src.logger import get_logger
    logger = get_logger()
    ```

``LOG_LEVEL`` (DEBUG, INFO, WARNING, ERROR, CRITICAL; default INFO) picks the
level. DEBUG adds timestamps and call sites and also lets ``urllib3`` report
each HTTP connection, which helps when a record run stalls on an endpoint:

    ```bash
    LOG_LEVEL=DEBUG keo build-kg --corpus corpus.jsonl --out artifacts/
    ```

Everything goes to stderr; stdout carries answers and reports only.
"""

import logging
import os
import sys
from typing import Optional

LOGGER_NAME = "KEO"
DEFAULT_LOG_LEVEL = "INFO"

DETAILED_FORMAT = (
    "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
)
SHORT_FORMAT = "%(levelname)s: %(message)s"

# Third-party loggers that are chatty at INFO.
_QUIET_LOGGERS = ("urllib3", "requests")


def resolve_level(value: Optional[str] = None) -> int:
    """Level number for ``value`` or ``$LOG_LEVEL``; unknown names mean INFO."""
    name = (value or os.getenv("LOG_LEVEL") or DEFAULT_LOG_LEVEL).strip().upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """
    (Re)build the single stderr handler on the project logger.

    Safe to call more than once; the previous handler is replaced.
    """
    resolved = resolve_level(level)
    logger = logging.getLogger(LOGGER_NAME)
    logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        logging.Formatter(
            DETAILED_FORMAT if resolved <= logging.DEBUG else SHORT_FORMAT
        )
    )
    logger.addHandler(handler)
    logger.setLevel(resolved)
    logger.propagate = False

    for noisy in _QUIET_LOGGERS:
        logging.getLogger(noisy).setLevel(
            logging.DEBUG if resolved <= logging.DEBUG else logging.WARNING
        )
    return logger


def get_logger() -> logging.Logger:
    logger = logging.getLogger(LOGGER_NAME)
    if not logger.handlers:
        return configure_logging()
    return logger
