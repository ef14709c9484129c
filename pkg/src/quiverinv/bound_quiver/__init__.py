"""Quiver and relation data model, parser, and path combinatorics."""

from .basis import (
    Admissibility,
    AdmissibilityVerdict,
    PathBasis,
    check_admissible,
    paths_of_length,
    paths_up_to,
)
from .parser import parse_algebra, print_algebra
from .quiver import Arrow, BoundQuiverAlgebra, Path, Quiver, Relation

__all__ = [
    "Admissibility",
    "AdmissibilityVerdict",
    "Arrow",
    "BoundQuiverAlgebra",
    "Path",
    "PathBasis",
    "Quiver",
    "Relation",
    "check_admissible",
    "parse_algebra",
    "paths_of_length",
    "paths_up_to",
    "print_algebra",
]
