"""Exception hierarchy shared by the map, solver and analysis modules."""


class BilliardError(Exception):
    """Base class for failures of the outer billiard computations."""


class NonConvexCurve(BilliardError, ValueError):
    """Raised when (n, eps) does not give a strictly convex curve."""


class InteriorPoint(BilliardError):
    """The point lies inside the curve, where the map is undefined."""


class OnCurve(BilliardError):
    """The point is (numerically) on the curve: the two tangencies merge."""


class NoConvergence(BilliardError):
    """The tangency refinement exhausted its iteration budget."""


class ParallelTangents(BilliardError):
    """Two tangent lines are parallel, so their intersection is undefined."""


class InvalidAnnulus(BilliardError, ValueError):
    """The two roots do not bound a valid annulus (need x1 < x2)."""
