"""
The `halfspace` console script: the hs_* management commands without a project.

Outside a Django project a minimal configuration is set up with this app installed.
DJANGO_SETTINGS_MODULE, when set, is used as is.
"""

import os
import sys

import django
from django.conf import settings
from django.core.management import execute_from_command_line

COMMANDS = ("run", "verify", "bench", "geom", "transform")


def configure() -> None:
    if settings.configured or os.environ.get("DJANGO_SETTINGS_MODULE"):
        return
    settings.configure(
        INSTALLED_APPS=["django_halfspace"],
        TEMPLATES=[
            {
                "BACKEND": "django.template.backends.django.DjangoTemplates",
                "APP_DIRS": True,
            }
        ],
        USE_TZ=True,
    )


def main(argv=None) -> None:
    argv = list(sys.argv[1:] if argv is None else argv)
    configure()
    django.setup()
    if argv and argv[0] in COMMANDS:
        argv[0] = f"hs_{argv[0]}"
    execute_from_command_line(["halfspace", *argv])
