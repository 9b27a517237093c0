"""Exception hierarchy shared by every module of the package."""


class NMXStateError(Exception):
    """Base class for all errors raised by nmxstate."""


class DimensionError(NMXStateError, ValueError):
    pass


class NonHermitianError(NMXStateError, ValueError):
    pass


class PositivityError(NMXStateError, ValueError):
    pass


class NormalizationError(NMXStateError, ValueError):
    pass


class DomainError(NMXStateError, ValueError):
    pass


class StateError(NMXStateError, ValueError):
    pass


class UnsupportedOperationError(NMXStateError, TypeError):
    pass


class NumericalError(NMXStateError, RuntimeError):
    """A numerical routine failed or two independent routes disagree."""


class ConvergenceError(NumericalError):
    """An iterative routine stopped before meeting its tolerance.

    ``best`` carries the best value found so callers can still use it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ConfigError(NMXStateError, ValueError):
    pass
