"""Exception hierarchy shared by every module of the package."""


class ObstructionError(Exception):
    """Base class for all package errors."""


class InvalidFieldSpec(ObstructionError, ValueError):
    pass


class InvalidElement(ObstructionError, ValueError):
    pass


class SpecMismatch(ObstructionError, TypeError):
    """Raised when elements of different fields are combined."""


class DivisionByZero(ObstructionError, ZeroDivisionError):
    pass


class EnumerationTooLarge(ObstructionError):
    pass


class SingularCurve(ObstructionError, ValueError):
    pass


class NotOnCurve(ObstructionError, ValueError):
    pass


class BadPrime(ObstructionError, ValueError):
    pass


class CuspidalOrBadPoint(ObstructionError):
    """A denominator of the j-formula vanishes at the point."""


class UnsupportedJ(ObstructionError, ValueError):
    pass


class UnsupportedCharacteristic(ObstructionError, ValueError):
    pass


class InvalidTwistParameter(ObstructionError, ValueError):
    pass


class UnsupportedLevel(ObstructionError, ValueError):
    pass


class InvalidDelta(ObstructionError, ValueError):
    pass


class InvalidDivisor(ObstructionError, ValueError):
    pass


class GraphClosureError(ObstructionError):
    """An involution image fell outside the candidate set."""


class InternalError(ObstructionError):
    """A mathematical invariant that must always hold was violated."""


class ModelConfigError(ObstructionError, ValueError):
    pass
