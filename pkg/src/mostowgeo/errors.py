"""Exception hierarchy shared by all modules."""


class MostowGeoError(Exception):
    """Base class for all library errors."""


class ValidationError(MostowGeoError):
    """Input fails a structural invariant (non-finite, not Hermitian, ...)."""


class ShapeError(ValidationError):
    """Dimension mismatch between operands."""


class DomainError(MostowGeoError):
    """Scalar function applied outside its domain (log/sqrt of non-PD)."""


class SingularError(MostowGeoError):
    """Matrix required to be invertible is (numerically) singular."""


class NumericalFailure(MostowGeoError):
    """Iterative kernel failed to converge."""


class DegeneratePlaneError(MostowGeoError):
    """Sectional curvature requested on a nearly dependent pair."""


class AngleUndefinedError(MostowGeoError):
    """Riemannian angle at (near-)coincident vertices."""


class EmptySubspaceError(MostowGeoError):
    """Spanning set reduces to the zero subspace."""


class NotInSubspaceError(MostowGeoError):
    """Membership precondition for a subspace argument fails."""


class NonConvergenceError(MostowGeoError):
    """Descent stopped at max_iter with gradient above tolerance.

    Carries the flagged result when one is available.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
