"""Exception types shared across the package."""


class PacrrError(Exception):
    """Base class for domain errors raised by this package."""


class LoadError(PacrrError):
    """A data file or stream could not be parsed."""


class InsufficientSamplesError(PacrrError):
    """Too few samples to build the requested statistic."""
