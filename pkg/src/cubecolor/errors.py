"""Exception types shared across the package."""


class CubeColorError(Exception):
    pass


class DimensionError(CubeColorError, ValueError):
    pass


class MembershipError(CubeColorError, ValueError):
    pass


class CocycleError(CubeColorError):
    """Raised when a cochain expected to be closed has nonzero coboundary."""


class ValidationError(CubeColorError):
    """A coloring violates the face constraint; ``face`` is the first offender."""

    def __init__(self, message, face=None):
        super().__init__(message)
        self.face = face


class InvariantError(CubeColorError):
    """An identity that the construction guarantees failed to hold."""


class RealizationError(InvariantError):
    pass


class SizeGuardError(CubeColorError):
    pass
