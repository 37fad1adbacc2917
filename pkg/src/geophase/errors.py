"""Exception hierarchy shared by all geophase modules."""


class GeophaseError(ValueError):
    """Base class for every error raised by the library."""


class NotHermitian(GeophaseError):
    pass


class ConvergenceFailure(GeophaseError):
    pass


class DomainError(GeophaseError):
    """A value falls outside the domain of a scalar or matrix function."""


class ZeroArgument(GeophaseError):
    pass


class ShapeMismatch(GeophaseError):
    pass


class ChartOverflow(GeophaseError):
    """A tangent parameter leaves the region where the chart map is bijective."""


class ChartEscape(GeophaseError):
    """A linear fractional image is numerically singular (cut-locus crossing)."""


class PairInvalid(GeophaseError):
    pass


class SingularQ(GeophaseError):
    pass


class SingularBlock(GeophaseError):
    pass


class ParseError(GeophaseError):
    pass


class ValidationError(GeophaseError):
    pass
