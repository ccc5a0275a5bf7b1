from django.apps import AppConfig
from django.core import checks

from django_halfspace.core.settings_loader import HalfspaceSettingsLoader


class DjangoHalfspaceAppConfig(AppConfig):
    name = "django_halfspace"
    verbose_name = "Django Halfspace"

    def ready(self) -> None:
        # Parse the HALFSPACE setting once at startup.
        HalfspaceSettingsLoader.instance()

        # Report inconsistent profiles through the system check framework.
        checks.register(check_loader_instance)


def check_loader_instance(**kwargs):
    return HalfspaceSettingsLoader.instance().check(**kwargs)
