"""Exception hierarchy shared by all qdesign modules."""


class QDesignError(Exception):
    """Base class for all library errors."""


class InvalidParameters(QDesignError):
    """A precondition on the operation's parameters is violated."""


class UnsupportedOrder(InvalidParameters):
    """Requested field order is not a supported prime power."""


class ResourceLimitError(QDesignError):
    """A computation would exceed its configured size cap."""


class TooLarge(ResourceLimitError):
    """An enumeration or matrix would exceed its size cap."""


class TooManyTerms(ResourceLimitError):
    """A term-by-term sum has more terms than the configured cap."""


class AmbientMismatch(InvalidParameters):
    """Operands live in different ambient spaces or fields."""


class DimensionMismatch(InvalidParameters):
    """Operand dimensions violate the operation's requirements."""


class SingularMap(InvalidParameters):
    """A linear map that must be invertible is singular."""


class DegenerateSystem(QDesignError):
    """Internal assertion: a linear system that must be solvable is not."""
