"""Formats exceptions escaping CLI commands into structured error lines"""

import functools
import logging
import typing

import click
import orjson
import pydantic

from helpers.exceptions import CouplerError


logger = logging.getLogger(__name__)

VALIDATION_EXIT_CODE = 2
INTERNAL_EXIT_CODE = 1

Command = typing.TypeVar("Command", bound=typing.Callable[..., typing.Any])


def _location(loc: typing.Sequence[typing.Union[str, int]]) -> str:
    return ".".join(str(part) for part in loc)


def error_payload(exc: BaseException) -> typing.Tuple[typing.Dict[str, typing.Any], int]:
    """
    Structured error document and exit code of an exception.

    :return: (payload, exit code)
    """
    if isinstance(exc, CouplerError):
        return {"status": "error", **exc.to_dict()}, exc.exit_code
    if isinstance(exc, pydantic.ValidationError):
        errors = exc.errors()
        first = errors[0] if errors else {}
        field = _location(first.get("loc", ())) or None
        message = first.get("msg", str(exc))
        if len(errors) > 1:
            message = f"{message} (and {len(errors) - 1} more)"
        return {
            "status": "error",
            "code": "validation_error",
            "message": message,
            "field": field,
        }, VALIDATION_EXIT_CODE
    return {
        "status": "error",
        "code": "internal_error",
        "message": str(exc) or type(exc).__name__,
        "field": None,
    }, INTERNAL_EXIT_CODE


def error_line(exc: BaseException) -> str:
    payload, _ = error_payload(exc)
    return orjson.dumps(payload).decode("utf-8")


def captured(command: Command) -> Command:
    """
    Wrap a click command callback so that failures end the process with a single
    JSON error line on stderr and the error's exit code.

    Click's own control flow exceptions pass through untouched.
    """

    @functools.wraps(command)
    def wrapper(*args: typing.Any, **kwargs: typing.Any) -> typing.Any:
        try:
            return command(*args, **kwargs)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as exc:
            payload, exit_code = error_payload(exc)
            if exit_code == INTERNAL_EXIT_CODE and not isinstance(exc, CouplerError):
                logger.exception("Unhandled error in command")
            else:
                logger.debug(f"Command failed with {payload['code']}: {payload['message']}")
            click.echo(orjson.dumps(payload).decode("utf-8"), err=True)
            click.get_current_context().exit(exit_code)

    return typing.cast(Command, wrapper)


__all__ = ["error_payload", "error_line", "captured"]
