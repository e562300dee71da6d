"""Equigeodesic vectors on reductive homogeneous spaces.

Matrix realisations of so(n), u(n) and sp(n), seven families of homogeneous
spaces, generation of the bilinear systems whose zeros are the equigeodesic
vectors, a catalog of parametric solution families and a numeric solver.
"""

from .catalog import SolutionFamily, instantiate, list_families, verify_family
from .engine import (
    Classification,
    QuadraticSystem,
    bracket_m,
    classify_vector,
    compare_systems,
    cross_residuals,
    equigeodesic_residual,
    generate_system,
    geodesic_vector_check,
)
from .errors import EquigeodesicError
from .homspace import (
    CoefficientVector,
    MetricClassPartition,
    MetricSpec,
    SpaceConfig,
    build_space,
    metric_presets,
    project_m,
    validate_wallach,
)
from .liealg import (
    LieBasis,
    MatrixElement,
    bilinear_form,
    build_so_basis,
    build_sp_basis,
    build_u_basis,
    commutator,
    validate_bracket_lemma,
)
from .solver import exhaustiveness_report, solve, support_signature

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "CoefficientVector",
    "EquigeodesicError",
    "LieBasis",
    "MatrixElement",
    "MetricClassPartition",
    "MetricSpec",
    "QuadraticSystem",
    "SolutionFamily",
    "SpaceConfig",
    "bilinear_form",
    "bracket_m",
    "build_so_basis",
    "build_sp_basis",
    "build_space",
    "build_u_basis",
    "classify_vector",
    "commutator",
    "compare_systems",
    "cross_residuals",
    "equigeodesic_residual",
    "exhaustiveness_report",
    "generate_system",
    "geodesic_vector_check",
    "instantiate",
    "list_families",
    "metric_presets",
    "project_m",
    "solve",
    "support_signature",
    "validate_bracket_lemma",
    "validate_wallach",
    "verify_family",
]
