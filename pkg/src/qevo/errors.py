"""Exception types shared across the package."""


class QevoError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(QevoError, ValueError):
    pass


class CapacityError(QevoError):
    """A table, register or state would exceed a desk-scale memory guard."""


class SizeError(QevoError):
    """An exact oracle was asked for an instance beyond its enumeration guard."""


class DomainError(QevoError, ValueError):
    pass


class RangeError(QevoError, ValueError):
    """A fitness value does not fit in its quantum register."""


class StateError(QevoError):
    """A statevector is not in the form an operation requires."""


class ConfigError(QevoError):
    """Benchmark configuration is malformed or inconsistent."""
