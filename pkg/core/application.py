"""
Defines project setup and initialization code

All setup code should be defined in the `initialize_project` function
"""

import logging
import os

from helpers.config import settings, SETTINGS_ENV_VARIABLE
from helpers.logging import setup_logging

NAME = "zenocoupler"

ENVIRONMENT = os.getenv("ENVIRONMENT", "development").lower()
if ENVIRONMENT == "development":
    SETTINGS_MODULE = "core.settings.development"
elif ENVIRONMENT == "production":
    SETTINGS_MODULE = "core.settings.production"
else:
    raise ValueError(f"Invalid environment: {ENVIRONMENT}")

VERSION = "0.1.0"

logger = logging.getLogger(__name__)


def setup_environment_variables() -> None:
    """Set environment variables required for project setup"""
    os.environ.setdefault("ZENOCOUPLER_APPLICATION_NAME", NAME)
    os.environ.setdefault("ZENOCOUPLER_APPLICATION_VERSION", VERSION)
    os.environ.setdefault(SETTINGS_ENV_VARIABLE, SETTINGS_MODULE)


def initialize_project() -> None:
    """Initialize/configure project"""
    setup_environment_variables()
    settings.configure()
    setup_logging(log_file=settings.LOG_FILE, level=settings.LOG_LEVEL)
    logger.debug(f"Configured project settings using {SETTINGS_MODULE!r} module")

    from helpers.apps import discover_apps

    for app in discover_apps():
        # Ensures that commands defined in each app are
        # registered on project setup
        logger.debug(f"Discovering commands for app: {app.label}")
        app.commands
