"""Exception types shared across the package."""


class AntinormError(Exception):
    """Base class for errors raised by this package."""


class ConvergenceError(AntinormError, RuntimeError):
    """An iterative solver ran out of sweeps."""


class DomainError(AntinormError, ValueError):
    """A spectrum (or argument) falls outside the domain of a scalar function."""


class NotPSDError(AntinormError, ValueError):
    """A matrix required to be positive semi-definite is not."""


class ParameterError(AntinormError, ValueError):
    """Invalid parameters for a norm, anti-norm, function or configuration."""


class PreconditionError(AntinormError, ValueError):
    """An operation's mathematical precondition does not hold."""
