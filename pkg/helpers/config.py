"""Lazily configured project settings"""

import importlib
import os
import threading
import types
import typing


SETTINGS_ENV_VARIABLE = "ZENOCOUPLER_SETTINGS_MODULE"
DEFAULT_SETTINGS_MODULE = "core.settings.development"


class Settings:
    """
    Proxy over a settings module.

    The module is imported on first access unless `configure` was called
    explicitly. Settings are read as attributes or items.
    """

    def __init__(self) -> None:
        self._module: typing.Optional[types.ModuleType] = None
        self._lock = threading.Lock()

    @property
    def configured(self) -> bool:
        return self._module is not None

    def configure(self, settings_module: typing.Optional[str] = None) -> None:
        """
        Load the settings module.

        :param settings_module: dotted path of the module. Defaults to the value of
            the settings environment variable, then to the development settings.
        """
        module_name = settings_module or os.getenv(
            SETTINGS_ENV_VARIABLE, DEFAULT_SETTINGS_MODULE
        )
        module = importlib.import_module(module_name)
        with self._lock:
            self._module = module

    def _load(self) -> types.ModuleType:
        if self._module is None:
            self.configure()
        return typing.cast(types.ModuleType, self._module)

    def __getattr__(self, name: str) -> typing.Any:
        if name.startswith("_"):
            raise AttributeError(name)
        try:
            return getattr(self._load(), name)
        except AttributeError:
            raise AttributeError(f"Setting {name!r} is not defined") from None

    def __getitem__(self, name: str) -> typing.Any:
        try:
            return getattr(self, name)
        except AttributeError as exc:
            raise KeyError(name) from exc

    def get(self, name: str, default: typing.Any = None) -> typing.Any:
        try:
            return self[name]
        except KeyError:
            return default


settings = Settings()


__all__ = ["settings", "Settings", "SETTINGS_ENV_VARIABLE"]
