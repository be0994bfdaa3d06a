"""Exception types shared across the package.

Every error a caller is expected to handle derives from ``FalakError`` so the
CLI can map them onto exit codes in one place.
"""


class FalakError(Exception):
    """Base class for all package errors."""


class PreconditionError(FalakError, ValueError):
    """An input violates a documented precondition."""


class MalformedSexagesimal(PreconditionError):
    pass


class DigitOutOfRange(PreconditionError):
    pass


class FieldOutOfRange(PreconditionError):
    pass


class UnknownPointLabel(PreconditionError, KeyError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class UnknownBody(PreconditionError, KeyError):
    pass


class UnsupportedPair(PreconditionError):
    pass


class InfeasibleTargets(PreconditionError):
    pass


class DegenerateGeometry(PreconditionError):
    pass


class SpanMismatch(PreconditionError):
    pass
