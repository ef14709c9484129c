"""Representations, Hom/Ext, Krull-Schmidt, exceptional sequences."""

from .endo import (
    EndAlgebra,
    Summand,
    decompose_with_maps,
    factor_charpoly,
    indecomposable_summands,
    is_indecomposable,
    is_isomorphic,
    is_schur,
    isomorphism,
    krull_schmidt,
    newton_lift_idempotent,
)
from .exceptional import ExceptionalReport, check_exceptional_sequence
from .homs import (
    RepHom,
    Resolution,
    ResolutionStep,
    ext_dim,
    euler_pairing_via_ext,
    hom_dim,
    hom_space,
    projective_cover,
    projective_resolution,
)
from .representation import (
    ProjectiveModule,
    Representation,
    free_module,
    parse_representation,
    print_representation,
    projective,
    simple,
    zero_representation,
)

__all__ = [
    "EndAlgebra",
    "ExceptionalReport",
    "ProjectiveModule",
    "RepHom",
    "Representation",
    "Resolution",
    "ResolutionStep",
    "Summand",
    "check_exceptional_sequence",
    "decompose_with_maps",
    "ext_dim",
    "euler_pairing_via_ext",
    "factor_charpoly",
    "free_module",
    "hom_dim",
    "hom_space",
    "indecomposable_summands",
    "is_indecomposable",
    "is_isomorphic",
    "is_schur",
    "isomorphism",
    "krull_schmidt",
    "newton_lift_idempotent",
    "parse_representation",
    "print_representation",
    "projective",
    "projective_cover",
    "projective_resolution",
    "simple",
    "zero_representation",
]
