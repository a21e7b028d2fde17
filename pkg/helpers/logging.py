import logging
import logging.config
import typing
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler


def console_handler(**kwargs: typing.Any) -> RichHandler:
    """Rich console handler writing to stderr, leaving stdout to command output"""
    return RichHandler(console=Console(stderr=True), **kwargs)


def setup_logging(
    log_file: typing.Optional[typing.Union[str, Path]] = None,
    level: str = "INFO",
) -> None:
    """
    Configure the root logger.

    :param log_file: optional path of a rotating log file
    :param level: log level name for all handlers
    """
    handlers: typing.Dict[str, typing.Dict[str, typing.Any]] = {
        "console": {
            "()": "helpers.logging.console_handler",
            "level": level,
            "formatter": "console",
            "rich_tracebacks": True,
            "show_path": False,
        }
    }
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers["file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": level,
            "formatter": "file",
            "filename": str(log_file),
            "maxBytes": 5 * 1024 * 1024,
            "backupCount": 3,
            "encoding": "utf-8",
        }

    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "console": {"format": "%(message)s", "datefmt": "[%X]"},
                "file": {
                    "format": "%(asctime)s %(levelname)s %(name)s: %(message)s"
                },
            },
            "handlers": handlers,
            "root": {"level": level, "handlers": list(handlers)},
        }
    )


__all__ = ["setup_logging"]
