"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid run configuration or argument."""


class NumericalFailure(RuntimeError):
    """A numerical routine produced non-finite or unphysical output."""


class RootNotFound(NumericalFailure):
    """A bracketing search never observed a sign change."""
