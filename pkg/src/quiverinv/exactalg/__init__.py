"""Exact rational linear algebra and a small polynomial-ideal kernel."""

from .groebner import (
    BuchbergerLimits,
    Consistency,
    DEFAULT_LIMITS,
    buchberger,
    groebner_inconsistent,
    normal_form,
)
from .linalg import (
    LinearSolution,
    QQ,
    RatMatrix,
    RrefResult,
    column_space_basis,
    in_span,
    matrix_poly,
    rref,
    solve,
    solve_and_kernel,
    span_rank,
)
from .points import DEFAULT_CANDIDATES, find_rational_point
from .poly import Polynomial, grevlex_key

__all__ = [
    "BuchbergerLimits",
    "Consistency",
    "DEFAULT_CANDIDATES",
    "DEFAULT_LIMITS",
    "find_rational_point",
    "LinearSolution",
    "Polynomial",
    "QQ",
    "RatMatrix",
    "RrefResult",
    "buchberger",
    "column_space_basis",
    "groebner_inconsistent",
    "grevlex_key",
    "in_span",
    "matrix_poly",
    "normal_form",
    "rref",
    "solve",
    "solve_and_kernel",
    "span_rank",
]
