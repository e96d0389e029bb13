"""
Utility Functions for the Figurate Toolkit
"""
import sys
import logging
from pathlib import Path
from typing import Optional, Union

import colorlog

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: Union[str, int] = "WARNING", log_file: Optional[Union[str, Path]] = None):
    """Setup logging configuration"""
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_figurate", False):
            root.removeHandler(handler)

    # Results go to stdout, so diagnostics stay on stderr
    stream = colorlog.StreamHandler(sys.stderr)
    stream.setFormatter(
        colorlog.ColoredFormatter(
            "%(log_color)s" + LOG_FORMAT,
            log_colors={
                "DEBUG": "cyan",
                "INFO": "green",
                "WARNING": "yellow",
                "ERROR": "red",
                "CRITICAL": "bold_red",
            },
        )
    )
    stream._figurate = True
    root.addHandler(stream)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(path, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        file_handler._figurate = True
        root.addHandler(file_handler)

    root.setLevel(level)

    logger = logging.getLogger(__name__)
    logger.info("📝 Logging setup complete")

    return logger
