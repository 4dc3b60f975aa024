"""Exception types raised by the construction routines."""


class DeformedAlgebraError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpecError(DeformedAlgebraError, ValueError):
    """Algebra parameters outside the supported domain."""


class UnitarityViolation(DeformedAlgebraError):
    """The ladder norm ``c - g(h0 + n)`` went negative before closing.

    No unitary lowest-weight representation exists for the requested
    parameters; ``level`` is the first offending ``n``.
    """

    def __init__(self, level, value):
        self.level = level
        self.value = value
        super().__init__(
            f"c - g(h0 + n) = {value:.6g} < 0 at n = {level}; "
            "no unitary lowest-weight representation"
        )


class RepresentationError(DeformedAlgebraError):
    """Representation requested with unusable size or structure."""


class CompactRepError(DeformedAlgebraError):
    """Canonical conjugate requested on a finite-dimensional representation."""


class DegenerateDenominator(DeformedAlgebraError):
    def __init__(self, level, value):
        self.level = level
        self.value = value
        super().__init__(
            f"|c - g(h0 + n - 1)| = {abs(value):.3g} vanishes at n = {level}"
        )


class TruncationError(DeformedAlgebraError):
    """State has too much weight near the truncation boundary."""

    def __init__(self, metric, ceiling, what="tail_mass"):
        self.metric = metric
        self.ceiling = ceiling
        self.what = what
        super().__init__(
            f"{what} = {metric:.3e} exceeds ceiling {ceiling:.1e}; "
            "increase dim or reduce the state parameter"
        )


class DimensionMismatch(DeformedAlgebraError, ValueError):
    pass
