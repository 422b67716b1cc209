"""
Colored console logging for the block IMH package.

Log lines go to stderr; stdout carries only CSV output.
"""
import logging
import os
import sys

import colorlog

LOGGER_NAME = "block_imh"

LOG_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "bold_red",
}


def _build_handler() -> logging.Handler:
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(
        "%(log_color)s%(levelname)-8s%(reset)s %(asctime)s %(name)s %(message)s",
        log_colors=LOG_COLORS,
        reset=True,
    ))
    return handler


def _configure(level: str) -> logging.Logger:
    # drop handlers installed by earlier imports so lines are not duplicated
    for old in logging.root.handlers[:]:
        logging.root.removeHandler(old)
    logging.basicConfig(level=level.upper(), handlers=[_build_handler()])
    return logging.getLogger(LOGGER_NAME)


logger = _configure(os.getenv("IMH_LOG_LEVEL", "INFO"))


def set_log_level(level: str) -> None:
    """Change the package logger level at runtime (the CLI --log-level flag)."""
    logger.setLevel(level.upper())
