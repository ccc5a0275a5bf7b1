__version__ = "1.0.0"

from .core.settings_loader import HalfspaceConfig  # noqa: E402


__all__ = ["HalfspaceConfig", "__version__"]
