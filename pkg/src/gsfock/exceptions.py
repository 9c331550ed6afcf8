"""Exception hierarchy shared by all gsfock modules."""


class GSFockError(Exception):
    """Base class for all errors raised by gsfock."""


class SizeLimitError(GSFockError):
    """A tensor power would exceed the configured maximum level size."""


class InputError(GSFockError, ValueError):
    """Malformed operator data or arguments (bad shapes, out-of-range positions)."""


class ValidationError(GSFockError, ValueError):
    """Input data violates an algebraic law that a constructor requires."""


class InconsistencyError(GSFockError):
    """A computed object violates the hypotheses of the construction (e.g. non-Hermitian Gram)."""


class ConstructionError(GSFockError):
    """A derived structure (such as a quotient representation) cannot be built."""
