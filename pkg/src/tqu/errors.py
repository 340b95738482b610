"""Exception hierarchy shared by all modules."""


class UncertaintyError(Exception):
    """Base class for every error raised by :mod:`tqu`."""


class DomainError(UncertaintyError, ValueError):
    """A scalar argument lies outside the domain of the function."""


class InvalidObservable(UncertaintyError, ValueError):
    """A Pauli observable axis is not a unit vector."""


class UnphysicalState(UncertaintyError, ValueError):
    """A Bloch vector lies outside the unit ball."""


class ConfigError(UncertaintyError, ValueError):
    """Invalid generation or experiment parameters."""


class ZeroCounts(UncertaintyError, ArithmeticError):
    """No counts were recorded for one of the measured observables."""
