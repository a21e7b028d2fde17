"""Project command registry"""

import typing
import click


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def management() -> None:
    """Zeno parameters of a monitor-coupled hyper-Raman coupler."""


def register(name: typing.Optional[str] = None, **attrs: typing.Any):
    """
    Register a click command on the management group.

    :param name: command name, defaults to the function name
    :param attrs: extra keyword arguments for `click.command`
    """
    return management.command(name=name, **attrs)


__all__ = ["management", "register"]
