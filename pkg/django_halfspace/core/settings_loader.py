from pathlib import Path
from typing import Dict, List, NamedTuple, Optional

from django.conf import settings
from django.core.checks import CheckMessage, Error, Warning

from django_halfspace.core.exceptions import (
    HalfspaceConfigError,
    HalfspaceConfigNotFoundError,
)

DEFAULT_PROFILE = "default"


class HalfspaceConfig(NamedTuple):
    """
    The options of one HALFSPACE profile.
    """

    # Lattice dimension of targets and learners.
    dimension: int = 2

    # Steps fed to a learner before a run is given up.
    max_steps: int = 2000

    # Steps a hypothesis must stay unchanged (and correct) to count as converged.
    convergence_window: int = 100

    # Longest trace prefix the validators look at.
    validator_step_cap: int = 2000

    # Box radius for bounded validation, None for exact deciders only.
    validator_radius: Optional[int] = None

    # Indices the enumeration learner may try per step.
    enumeration_budget: int = 200_000

    # Worker processes for hs_bench.
    bench_jobs: int = 1

    # Directory where traces are written when no explicit path is given.
    trace_dir: Optional[str] = None

    # Seconds to wait for remote trace and stream files.
    remote_timeout: float = 10.0


class HalfspaceProfile:
    """
    A named HalfspaceConfig.
    """

    def __init__(self, config: HalfspaceConfig, name: str = DEFAULT_PROFILE) -> None:
        self.config = config
        self.name = name

    def _setting(self, field: str) -> str:
        return f'{HalfspaceSettingsLoader.HALFSPACE}["{self.name}"]["{field}"]'

    def check(self) -> List[CheckMessage]:
        config = self.config
        messages: List[CheckMessage] = []
        if config.convergence_window > config.max_steps:
            messages.append(
                Error(
                    f"convergence_window {config.convergence_window} exceeds "
                    f"max_steps {config.max_steps}, no run can converge",
                    id="django_halfspace.E001",
                    hint=f"Lower {self._setting('convergence_window')}.",
                )
            )
        if config.dimension < 1:
            messages.append(
                Error(
                    f"dimension {config.dimension} is not positive",
                    id="django_halfspace.E002",
                    hint=f"Set {self._setting('dimension')} to 1 or more.",
                )
            )
        if config.trace_dir and not Path(config.trace_dir).is_dir():
            messages.append(
                Warning(
                    f"trace directory {config.trace_dir} does not exist",
                    id="django_halfspace.W001",
                    hint=f"Create it or change {self._setting('trace_dir')}.",
                )
            )
        return messages

    def trace_path(self, name: str) -> Path:
        if self.config.trace_dir:
            return Path(self.config.trace_dir) / name
        return Path(name)


def parse_config(options, name: str = DEFAULT_PROFILE) -> HalfspaceConfig:
    """
    Raises:
        HalfspaceConfigError: if the profile holds an unknown option.
    """
    if isinstance(options, HalfspaceConfig):
        return options
    unknown = sorted(set(options) - set(HalfspaceConfig._fields))
    if unknown:
        raise HalfspaceConfigError(
            f"unknown option {unknown[0]!r} in "
            f'{HalfspaceSettingsLoader.HALFSPACE}["{name}"]'
        )
    return HalfspaceConfig(**options)


class HalfspaceSettingsLoader:
    """
    Holds the parsed HALFSPACE profiles.
    """

    _instance = None
    _profiles: Dict[str, HalfspaceProfile]

    HALFSPACE = "HALFSPACE"

    def __init__(self) -> None:
        raise RuntimeError("Use the instance() method instead.")

    @classmethod
    def instance(cls):
        """
        Singleton, so that the setting is only parsed once.

        Returns:
            HalfspaceSettingsLoader -- only instance of the class.
        """

        if cls._instance is None:
            cls._instance = cls.__new__(cls)
            cls._instance._profiles = {}

            cls._apply_halfspace_settings()
            cls._apply_default_fallback()

        return cls._instance

    def check(self, **kwargs) -> List[CheckMessage]:
        messages: List[CheckMessage] = []
        for profile in self._profiles.values():
            messages.extend(profile.check())
        return messages

    @classmethod
    def _apply_halfspace_settings(cls):
        halfspace_settings = getattr(settings, cls.HALFSPACE, None)

        if not halfspace_settings:
            return

        for name, options in halfspace_settings.items():
            config = parse_config(options, name)
            cls._instance._profiles[name] = HalfspaceProfile(config, name)

    @classmethod
    def _apply_default_fallback(cls):
        """
        Without any setting, a "default" profile with default values is created.
        """

        if not cls._instance._profiles:
            cls._instance._profiles[DEFAULT_PROFILE] = HalfspaceProfile(
                HalfspaceConfig()
            )

    def profile(self, name: str = DEFAULT_PROFILE) -> HalfspaceProfile:
        """
        Raises:
            HalfspaceConfigNotFoundError: If name is not a HALFSPACE profile.
        """

        if name not in self._profiles:
            raise HalfspaceConfigNotFoundError(
                f"Cannot find {name} in {self.HALFSPACE} settings."
            )

        return self._profiles[name]

    @property
    def profile_names(self) -> List[str]:
        return sorted(self._profiles)
