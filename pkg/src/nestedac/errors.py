"""Exception types raised across the package."""


class ACError(ValueError):
    """Base class for invalid-input errors."""


class NotPrime(ACError):
    pass


class FieldTooLarge(ACError):
    pass


class NotIrreducible(ACError):
    pass


class NotASubfieldSize(ACError):
    pass


class ExponentOutOfRange(ACError):
    pass


class NotNested(ACError):
    pass


class EmptyBlock(ACError):
    pass


class IndexOutOfRange(ACError):
    pass


class DegreeOutOfRange(ACError):
    pass


class BadOmegaSize(ACError):
    pass


class OmegaNotInSubfield(ACError):
    pass


class KOutOfRange(ACError):
    pass


class InvalidTransform(ACError):
    pass


class SizeOutOfRange(ACError):
    pass


class BadParameters(ACError):
    pass


class TooLarge(RuntimeError):
    """A computation would exceed its configured resource cap."""
