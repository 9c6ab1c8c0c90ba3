"""Exception taxonomy shared by all isowork modules."""


class IsoworkError(Exception):
    """Base class for all package-specific errors."""


class ExprSyntaxError(IsoworkError):
    """Malformed expression text.  `offset` is the byte offset of the error."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class UnknownIdentifierError(ExprSyntaxError):
    """Identifier outside the allowed variable/function/constant sets."""

    def __init__(self, name, offset):
        super().__init__(f"unknown identifier {name!r}", offset)
        self.name = name


class DomainError(IsoworkError):
    """Evaluation left the real domain (log/sqrt of a negative, division
    by zero, fractional power of a negative base, ...)."""


class DegenerateTangentError(IsoworkError):
    """x'(t) + y'(t) vanished where the isotropic completion dz = -dx dy/(dx+dy)
    needs it nonzero."""


class NotIsotropicError(IsoworkError):
    """Force field or curve failed its isotropy admission check, so the
    case formulas do not apply."""


class NearSingularDenominatorError(IsoworkError):
    """(P+R)(x'+y') came too close to zero at a quadrature node."""


class CrossCheckFailureError(IsoworkError):
    """Case formula and direct quadrature disagree beyond 10x the combined
    error estimates."""


class CaseMismatchError(IsoworkError):
    """A plane work formula was invoked outside its case."""


class OutOfRangeError(IsoworkError):
    """Angle parameter outside the module's accepted interval."""


class CheckFailure(IsoworkError):
    """A verification property failed (used by the verify suite)."""
