import functools
import importlib
import importlib.util
import logging
import types
import typing

from .config import settings


logger = logging.getLogger(__name__)


class App:
    """An installed app package"""

    def __init__(self, name: str) -> None:
        self.name = name

    def __repr__(self) -> str:
        return f"App(name={self.name!r})"

    def _import_optional(self, submodule: str) -> typing.Optional[types.ModuleType]:
        module_name = f"{self.name}.{submodule}"
        if importlib.util.find_spec(module_name) is None:
            return None
        return importlib.import_module(module_name)

    @functools.cached_property
    def config(self) -> typing.Optional[types.ModuleType]:
        return self._import_optional("apps")

    @property
    def label(self) -> str:
        return getattr(self.config, "app_name", self.name)

    @functools.cached_property
    def commands(self) -> typing.Optional[types.ModuleType]:
        """Import the app's command module so its commands get registered"""
        return self._import_optional("commands")


def discover_apps() -> typing.Iterator[App]:
    """Yield the apps listed in `INSTALLED_APPS`"""
    for name in settings.INSTALLED_APPS:
        yield App(name)


__all__ = ["App", "discover_apps"]
