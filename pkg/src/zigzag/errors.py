"""Exception types raised across the package."""


class ZigzagError(Exception):
    """Base class for all package errors."""


class DimensionError(ZigzagError, ValueError):
    """Matrix or vector shapes do not fit together."""


class SubquotientError(ZigzagError, ValueError):
    """A requested subquotient or induced map is not well defined."""


class ValidationError(ZigzagError, ValueError):
    """Input data does not describe a valid object."""


class IntegrityError(ZigzagError):
    """An internal consistency check failed (e.g. negative multiplicity)."""


class DomainError(ZigzagError, ValueError):
    """An argument lies outside the supported range."""


class NotRealizableError(ZigzagError, ValueError):
    """Invariant values that no complex can realize."""


class ParseError(ZigzagError, ValueError):
    """Malformed input text."""
