"""Exception hierarchy shared by all modules.

Two families matter for callers: PreconditionError (bad or degenerate
input: poles at nodes, singular systems, clustered roots) and
ToleranceError (a computation ran but failed its accuracy contract).
The CLI maps them to distinct exit codes.
"""


class MultipointError(Exception):
    """Base class for all library errors."""


class PreconditionError(MultipointError):
    """Input violates a documented precondition."""


class SingularMatrixError(PreconditionError):
    """Linear system singular to tolerance; carries the offending pivot."""

    def __init__(self, pivot: float, message: str | None = None):
        self.pivot = float(pivot)
        super().__init__(message or f"matrix singular to tolerance (pivot magnitude {self.pivot:.3e})")


class PoleError(PreconditionError):
    """Evaluation point coincides with a pole (to tolerance)."""


class RootSeparationError(PreconditionError):
    """Roots are clustered or coincide where simple, distinct roots are required."""


class AdmissibilityError(PreconditionError):
    """Argument lies outside the admissible region of an operator."""


class ToleranceError(MultipointError):
    """A residual exceeded its accuracy contract."""


class ExactnessError(ToleranceError):
    """A division expected to be exact left a large remainder."""


class ConvergenceError(ToleranceError):
    """An iteration or quadrature failed to converge within its budget."""
