"""Real Heisenberg-invariant quartic surfaces containing 32 real lines."""

__version__ = "0.1.0"

from .configuration import Configuration, Tolerances, build_configuration, verify  # noqa: E402

__all__ = ["Configuration", "Tolerances", "build_configuration", "verify", "__version__"]
