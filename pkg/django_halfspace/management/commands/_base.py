from django.core.management.base import BaseCommand, CommandError

from django_halfspace.core.exceptions import HalfspaceError
from django_halfspace.core.settings_loader import (
    DEFAULT_PROFILE,
    HalfspaceProfile,
    HalfspaceSettingsLoader,
)

NOT_CONVERGED_RETURNCODE = 2


class HalfspaceCommand(BaseCommand):
    """
    Adds --profile and turns library errors into CommandError (exit code 1).
    """

    def add_arguments(self, parser):
        parser.add_argument(
            "--profile",
            default=DEFAULT_PROFILE,
            help="HALFSPACE profile supplying defaults for unset flags.",
        )

    def handle(self, *args, **options):
        try:
            profile = HalfspaceSettingsLoader.instance().profile(options.pop("profile"))
            return self.handle_profile(profile, **options)
        except HalfspaceError as error:
            raise CommandError(str(error)) from error

    def handle_profile(self, profile: HalfspaceProfile, **options):
        raise NotImplementedError

    @staticmethod
    def option(options, name: str, profile: HalfspaceProfile, field: str = ""):
        """An explicit flag, or else the profile's value."""
        value = options.get(name)
        if value is None:
            return getattr(profile.config, field or name)
        return value
