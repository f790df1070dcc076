"""Exact construction of circles and spheres through exactly n lattice points."""

from .concyclic2d import (
    AdmissiblePrime,
    CircleSpec,
    bijection_check,
    build_circle,
    compute_j,
    enumerate_circle_points,
    find_admissible_prime,
)
from .errors import ConsistencyError, SearchBudgetExceeded, TheoremViolationError
from .lattice import (
    GramMatrix,
    QuadForm,
    ShellResult,
    enumerate_ball,
    enumerate_shell,
    form_from_gram,
    gauss_reduce,
)
from .quadorder import (
    OrderElement,
    OrderParams,
    SplittingType,
    brute_count_reps,
    generate_norm_elements,
    order_params,
    splitting_type,
    theorem_main1_check,
)
from .spherelift import (
    SphereSpec,
    build_sphere,
    gram_schmidt_data,
    lift_once,
    rectangular_integral_model,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissiblePrime",
    "CircleSpec",
    "ConsistencyError",
    "GramMatrix",
    "OrderElement",
    "OrderParams",
    "QuadForm",
    "SearchBudgetExceeded",
    "ShellResult",
    "SphereSpec",
    "SplittingType",
    "TheoremViolationError",
    "bijection_check",
    "brute_count_reps",
    "build_circle",
    "build_sphere",
    "compute_j",
    "enumerate_ball",
    "enumerate_circle_points",
    "enumerate_shell",
    "find_admissible_prime",
    "form_from_gram",
    "gauss_reduce",
    "generate_norm_elements",
    "gram_schmidt_data",
    "lift_once",
    "order_params",
    "rectangular_integral_model",
    "splitting_type",
    "theorem_main1_check",
]
