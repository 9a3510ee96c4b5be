class PushexError(Exception):
    """Base class of all errors raised by pushex."""


class DomainError(PushexError, ValueError):
    """An input lies outside the domain of an operation."""


class RangeTooLargeError(DomainError):
    """The finite range of a matrix process is too large to enumerate."""


class ConfigError(PushexError, ValueError):
    """An experiment configuration is invalid."""


class DegenerateProcessError(PushexError, ValueError):
    """The process cannot reach consensus (e.g. every packet is dropped)."""


class EstimatorError(PushexError, RuntimeError):
    """A numerical estimator failed."""


class NotPrimitiveError(EstimatorError):
    """The product never became weakly primitive within the horizon."""
