"""Exception hierarchy shared by the solver modules.

The CLI maps these onto its exit-code contract, so new error conditions
should reuse one of the classes below rather than a bare ValueError.
"""


class TroplcpError(Exception):
    """Base class for every error raised by this package."""


class DomainMismatchError(TroplcpError):
    """Operands live in different value domains (additive vs multiplicative)."""


class DimensionError(TroplcpError):
    """Shapes of matrices/vectors do not conform."""


class MalformedInputError(TroplcpError):
    """Instance or CNF file is syntactically broken."""


class RationalFormatError(TroplcpError):
    """A numeric field is not an exact rational in 'p/q' or integer form."""


class ValidationError(TroplcpError):
    """An instance violates its standing assumptions, or a precondition fails."""


class DegenerateInstanceError(TroplcpError):
    """The requested operation is only defined for nondegenerate instances."""


class GuardExceededError(TroplcpError):
    """A brute-force size guard was exceeded; guards are hard errors."""


class InternalError(TroplcpError):
    """An invariant that should be unbreakable was broken: signals a bug."""
