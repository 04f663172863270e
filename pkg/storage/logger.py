"""
DUALFRENET Logging System
Root logger setup shared by the library engines and the CLI.
"""

import logging
import logging.handlers
import sys
from typing import Optional

import config

LOG_FORMAT = "%(asctime)s [%(levelname)-8s] %(name)s: %(message)s"
LOG_DATEFMT = "%Y-%m-%dT%H:%M:%S"


def _rotating_handler(log_file: str, formatter: logging.Formatter) -> Optional[logging.Handler]:
    try:
        handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,  # 10 MB
            backupCount=5,
            encoding="utf-8",
        )
    except OSError as e:
        logging.getLogger(__name__).warning(f"Could not open log file {log_file}: {e}")
        return None
    handler.setLevel(config.LOG_LEVEL_INT)
    handler.setFormatter(formatter)
    return handler


def setup_logging(
    log_file: Optional[str] = config.LOG_FILE,
    console_level: int = logging.WARNING,
) -> logging.Logger:
    """
    Configure the root logger.

    The console handler writes to stderr so that stdout stays reserved for
    CSV / JSON / OBJ payloads. A rotating file handler records everything at
    LOG_LEVEL when `log_file` is non-empty.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(min(config.LOG_LEVEL_INT, console_level))
    root_logger.handlers.clear()

    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=LOG_DATEFMT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = _rotating_handler(log_file, formatter)
        if file_handler is not None:
            root_logger.addHandler(file_handler)

    if config.TOL_SCALE != 1.0:
        root_logger.info(f"Tolerance scale active: x{config.TOL_SCALE:g}")

    return root_logger


def get_logger(name: str) -> logging.Logger:
    """Get a named logger."""
    return logging.getLogger(name)
