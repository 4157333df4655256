"""Exception types shared across the package."""


class TransitError(Exception):
    """Base class for all domain errors."""


class NegativeRadicandError(TransitError):
    """Square root of a negative field element."""


class DiscontinuousAtZeroError(TransitError):
    """Branch function evaluated at 0 with mismatched one-sided limits."""


class PoleAtZeroError(TransitError):
    """Branch function has a pole at 0."""


class DegenerateRescaleError(TransitError):
    """Rescaling map requested at t = 0."""


class WrongChartError(TransitError):
    """Affine coordinates requested for a point with x0 < 0."""


class OutsideDomainError(TransitError):
    """Hyperplane does not meet the geometry's domain."""


class NoTransverseIntersectionError(TransitError):
    """Half-pipe hyperplanes whose dual segment is not spacelike."""


class LightlikeMirrorError(TransitError):
    """Reflection requested in a lightlike hyperplane."""


class NotLorentzError(TransitError):
    """Matrix is not an isometry of the Minkowski form."""


class NotSpacelikeError(TransitError):
    """Vector expected to be spacelike is not."""


class NotIsometryError(TransitError):
    """Matrix does not preserve the quadratic form."""


class NotCollapsingError(TransitError):
    """Rotation parameter does not vanish at t = 0."""


class NotASymmetryError(TransitError):
    """Claimed symmetry does not permute the half-space system."""


class ChartViolationError(TransitError):
    """Vertex candidate escapes the affine chart x0 > 0."""


class OutOfIntervalError(TransitError):
    """Time parameter outside the validity interval."""


class UnknownCheckError(TransitError):
    """Unknown certification check name."""


class ParseError(TransitError):
    """Malformed scalar or time-parameter expression."""
