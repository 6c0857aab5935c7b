"""Exception types raised across the package."""


class EntropyContinuityError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitianError(EntropyContinuityError, ValueError):
    pass


class NoConvergenceError(EntropyContinuityError, RuntimeError):
    pass


class DimensionMismatchError(EntropyContinuityError, ValueError):
    pass


class InvalidStateError(EntropyContinuityError, ValueError):
    """A density matrix, probability vector or unitary fails its invariants."""


class NegativeEigenvalueError(InvalidStateError):
    pass


class OutOfRangeError(EntropyContinuityError, ValueError):
    pass


class OutOfValidityRangeError(OutOfRangeError):
    """The original Fannes bound was requested beyond T = 1/(2e)."""


class InvalidDimensionError(EntropyContinuityError, ValueError):
    pass


class NotSortedError(EntropyContinuityError, ValueError):
    pass


class GridTooFineError(EntropyContinuityError, ValueError):
    pass


class InfeasibleDeltaMinusError(EntropyContinuityError, ValueError):
    pass


class DegenerateDrawError(EntropyContinuityError, RuntimeError):
    pass


class BoundViolationError(EntropyContinuityError):
    """A sampled pair exceeded the sharp bound.

    Carries everything needed to regenerate the offending pair.
    """

    def __init__(self, *, dim, measure, seed, index, t, delta, bound):
        self.dim = dim
        self.measure = measure
        self.seed = seed
        self.index = index
        self.t = t
        self.delta = delta
        self.bound = bound
        super().__init__(
            f"bound violation at index {index} (seed={seed}, dim={dim}, "
            f"measure={measure}): T={t!r}, delta={delta!r} > bound={bound!r}"
        )
