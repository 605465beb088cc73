import logging
import sys

from ..core.config import settings

# package logger
logger = logging.getLogger("pstchain")
logger.setLevel(settings.LOG_LEVEL)

# stderr only, stdout carries CLI artifacts
console_handler = logging.StreamHandler(sys.stderr)
console_handler.setLevel(settings.LOG_LEVEL)

formatter = logging.Formatter(
    "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
console_handler.setFormatter(formatter)

if not logger.handlers:
    logger.addHandler(console_handler)
logger.propagate = False
