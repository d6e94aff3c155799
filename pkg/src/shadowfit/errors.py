"""Exception types shared across the package."""


class ShadowfitError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVector(ShadowfitError):
    """A direction with norm below 1e-12 was passed where a unit vector is needed."""


class UnsupportedDimension(ShadowfitError):
    """The operation is only implemented for a specific ambient dimension."""


class DomainError(ShadowfitError):
    """A scalar argument lies outside the domain where the operation is defined."""


class KindMismatch(ShadowfitError):
    """Two shadows of different kinds (radial vs support) were combined."""


class DegenerateConfig(ShadowfitError):
    """A geometric configuration is degenerate (parallel axes, no admissible layer, ...)."""


class ConvexityFailure(ShadowfitError):
    """Numeric convexity check failed.

    Carries the offending boundary pair so callers can inspect the dent.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NonConvexSupport(ShadowfitError):
    """A support-kind shadow produced a negatively oriented boundary curve."""


class HypothesisFailed(ShadowfitError):
    """A per-direction fit required by a volume comparison hypothesis failed.

    Carries the failing direction.
    """

    def __init__(self, message, direction=None):
        super().__init__(message)
        self.direction = direction
