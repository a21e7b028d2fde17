"""Main executable"""

from helpers import commands
from core import application


application.initialize_project()


if __name__ == "__main__":
    commands.management()
