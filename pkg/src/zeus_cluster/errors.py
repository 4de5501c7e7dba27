"""Exception hierarchy shared across the package."""


class ZeusError(Exception):
    """Base class for all package errors."""


class InstanceError(ZeusError):
    """Instance file is malformed or violates a model invariant."""


class ConfigError(ZeusError):
    """Problem or experiment configuration is invalid."""


class InfeasibleError(ZeusError):
    """The requested structure does not exist on this instance."""


class DegenerateInputError(ZeusError):
    """Input is degenerate for the requested operation (e.g. empty expert set)."""
