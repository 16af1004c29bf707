"""Exception types shared across the package."""


class CapacityError(Exception):
    """State space too large for exact enumeration or exact sampling."""


class ConfigError(Exception):
    """Invalid user-supplied configuration."""
