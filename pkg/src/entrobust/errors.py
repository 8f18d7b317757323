"""Exception types raised across the package."""


class EntRobustError(Exception):
    """Base class for all package errors."""


class NotHermitian(EntRobustError, ValueError):
    pass


class NoConvergence(EntRobustError, RuntimeError):
    pass


class SizeOutOfRange(EntRobustError, ValueError):
    pass


class OutOfRange(EntRobustError, ValueError):
    pass


class BadProbability(OutOfRange):
    pass


class BadAxis(EntRobustError, ValueError):
    pass


class BadSubset(EntRobustError, ValueError):
    pass


class UnknownName(EntRobustError, KeyError):
    pass


class NotNormalized(EntRobustError, ValueError):
    pass


class ZeroVector(EntRobustError, ValueError):
    pass


class DimensionMismatch(EntRobustError, ValueError):
    pass


class KetSyntaxError(EntRobustError, ValueError):
    """Malformed ket expression; ``position`` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotEntangledAtZero(EntRobustError, ValueError):
    pass


class NonMonotonic(EntRobustError, RuntimeError):
    """The partial-transpose eigenvalue did not cross zero exactly once."""


class MeanSpinVanishes(EntRobustError, ValueError):
    pass
