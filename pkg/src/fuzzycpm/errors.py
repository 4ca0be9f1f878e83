"""Exception hierarchy.

Every error raised by the library derives from :class:`FuzzyCPMError`.  The
three intermediate classes map onto distinct CLI exit codes.
"""


class FuzzyCPMError(Exception):
    """Base class for all library errors."""


class ValidationError(FuzzyCPMError, ValueError):
    """Input data violates a quantity or network invariant."""


class CapExceeded(FuzzyCPMError):
    """An exhaustive computation would exceed its configured size cap."""

    def __init__(self, message, count=None, cap=None):
        super().__init__(message)
        self.count = count
        self.cap = cap


# quantity validation

class EmptySupport(ValidationError):
    pass


class NonNormal(ValidationError):
    pass


class BeliefOutOfRange(ValidationError):
    pass


class DuplicateDuration(ValidationError):
    pass


class NegativeDuration(ValidationError):
    pass


class ExcessPrecision(ValidationError):
    """A value carries more decimal places than the declared scale allows."""


class ScaleMismatch(ValidationError):
    """Two quantities with different duration scale or belief precision were combined."""


# network validation

class EmptyNetwork(ValidationError):
    pass


class UnknownPredecessor(ValidationError):
    pass


class DuplicateActivity(ValidationError):
    pass


class InvalidDummy(ValidationError):
    pass


class CycleDetected(ValidationError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("cycle detected: " + " -> ".join(str(a) for a in self.cycle))


class MissingDuration(ValidationError):
    pass


# caps

class ConfigurationCapExceeded(CapExceeded):
    pass


class PathCapExceeded(CapExceeded):
    pass


class ProvenanceCapExceeded(CapExceeded):
    pass
