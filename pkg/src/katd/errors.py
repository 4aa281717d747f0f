class KatdError(Exception):
    """Base class for all errors raised by katd."""


class ModelMismatchError(KatdError, ValueError):
    """Operands belong to different models (or relations of different size)."""


class UnsupportedOperation(KatdError):
    """The model lacks a capability, e.g. omega or a complete test algebra."""


class NonIsotoneError(KatdError, ValueError):
    """A fixpoint iteration failed to stabilise, so the map is not isotone."""


class CapExceeded(KatdError):
    """An enumeration would exceed its configured cap."""


class AlgebraError(KatdError, AssertionError):
    """A postcondition that the algebra guarantees did not hold."""
