"""Decomposition of analytic functions over a node polynomial.

Functions analytic near a prescribed set of nodes decompose as a
monomial-row combination of functions of the node polynomial. This
package computes that decomposition for polynomials and rational
matrices, derives state-space realizations from it, solves linear
combination interpolation problems, and verifies the induced operator
and kernel identities.
"""

from .errors import (
    AdmissibilityError,
    ConvergenceError,
    ExactnessError,
    MultipointError,
    PoleError,
    PreconditionError,
    RootSeparationError,
    SingularMatrixError,
    ToleranceError,
)
from .poly import Polynomial, difference_quotient_vector, divide, exact_divide
from .nodes import (
    ConditioningWarning,
    NodeSet,
    PartialFractionTable,
    confluent_values,
    confluent_vandermonde,
    hermite_interpolant,
    interpolate_confluent,
    monomial_row,
    reciprocal_partial_fractions,
)
from .rational import RationalFunction, RationalMatrix, coerce_rational
from .decompose import (
    ComposedFunction,
    ContourConfig,
    Decomposition,
    backward_shift,
    contour_oracle,
    contour_radius_floor,
    decompose_polynomial,
    decompose_rational,
    reconstruct,
)
from .realization import (
    Realization,
    eval_realization,
    is_nilpotent,
    realization_to_rational,
    realize,
    transfer_equiv,
    transfer_function,
)
from .lci import (
    LCIProblem,
    LCISolution,
    lci_particular,
    lci_recover_parameter,
    lci_solution,
    lci_solve,
    verify_lci,
)
from .operators import (
    CheckReport,
    cuntz_compose,
    cuntz_extract,
    polynomial_roots,
    resolvent_apply,
    resolvent_rational,
    verify_cuntz,
    verify_resolvent_identity,
)
from .kernels import (
    FiniteRankKernel,
    KernelFactor,
    default_grid,
    factor_kernel,
    psd_check,
    verify_kernel_identity,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "CheckReport",
    "ComposedFunction",
    "ConditioningWarning",
    "ContourConfig",
    "ConvergenceError",
    "Decomposition",
    "ExactnessError",
    "FiniteRankKernel",
    "KernelFactor",
    "LCIProblem",
    "LCISolution",
    "MultipointError",
    "NodeSet",
    "PartialFractionTable",
    "PoleError",
    "Polynomial",
    "PreconditionError",
    "RationalFunction",
    "RationalMatrix",
    "Realization",
    "RootSeparationError",
    "SingularMatrixError",
    "ToleranceError",
    "backward_shift",
    "coerce_rational",
    "confluent_values",
    "confluent_vandermonde",
    "contour_oracle",
    "contour_radius_floor",
    "cuntz_compose",
    "cuntz_extract",
    "decompose_polynomial",
    "decompose_rational",
    "default_grid",
    "difference_quotient_vector",
    "divide",
    "eval_realization",
    "exact_divide",
    "factor_kernel",
    "hermite_interpolant",
    "interpolate_confluent",
    "is_nilpotent",
    "lci_particular",
    "lci_recover_parameter",
    "lci_solution",
    "lci_solve",
    "monomial_row",
    "polynomial_roots",
    "psd_check",
    "realization_to_rational",
    "realize",
    "reciprocal_partial_fractions",
    "reconstruct",
    "resolvent_apply",
    "resolvent_rational",
    "transfer_equiv",
    "transfer_function",
    "verify_cuntz",
    "verify_kernel_identity",
    "verify_lci",
    "verify_resolvent_identity",
]
