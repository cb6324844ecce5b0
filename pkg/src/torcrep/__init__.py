"""Exact toric resolutions of abelian Gorenstein quotient singularities.

Construct crepant and Hilbert-basis resolutions of C^n/G for finite
abelian diagonal G in SL(n, C), and certify that each exceptional divisor
is normally embedded with tubular neighborhood equal to the total space
of its weighted line bundle (the canonical bundle in the crepant case).
"""

from .divisors import TDivisor, canonical_divisor, class_group, principal_divisor
from .errors import TorcrepError
from .exceptional import (
    EmbeddingCertificate,
    StarFan,
    SurfaceType,
    age_affinity_check,
    certify_normal_embedding,
    classify_surface,
    coverage_check,
    star_fan,
    age_weighted_divisor,
    total_space_fan,
    xi_g,
)
from .fans import (
    Cone,
    Fan,
    cone_index,
    fan_from_json,
    fan_to_json,
    is_canonical,
    is_terminal,
    make_cone,
    make_fan,
    refines,
    sigma_fan,
    star_subdivision,
    validate_fan,
)
from .groups import (
    GroupData,
    JuniorSimplex,
    ObstructionReport,
    age,
    close_group,
    compact_juniors,
    crepant_obstructions,
    element_names,
    junior_simplex,
)
from .hilbert import HilbertBasis, hilbert_basis, is_irreducible
from .intlinalg import IntMatrix, hermite_normal_form, smith_normal_form
from .lattice import (
    LatticePoint,
    QuotientLattice,
    ScaledLattice,
    build_lattice,
    quotient_by_ray,
    unit_point,
)
from .resolve import (
    ResolutionResult,
    discrepancies,
    euler_check,
    resolve,
    search_resolution,
)

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "EmbeddingCertificate",
    "Fan",
    "GroupData",
    "HilbertBasis",
    "IntMatrix",
    "JuniorSimplex",
    "LatticePoint",
    "ObstructionReport",
    "QuotientLattice",
    "ResolutionResult",
    "ScaledLattice",
    "StarFan",
    "SurfaceType",
    "TDivisor",
    "TorcrepError",
    "age",
    "age_affinity_check",
    "build_lattice",
    "canonical_divisor",
    "certify_normal_embedding",
    "class_group",
    "classify_surface",
    "close_group",
    "compact_juniors",
    "cone_index",
    "coverage_check",
    "crepant_obstructions",
    "discrepancies",
    "element_names",
    "euler_check",
    "fan_from_json",
    "fan_to_json",
    "hermite_normal_form",
    "hilbert_basis",
    "is_canonical",
    "is_irreducible",
    "is_terminal",
    "junior_simplex",
    "make_cone",
    "make_fan",
    "principal_divisor",
    "quotient_by_ray",
    "refines",
    "resolve",
    "search_resolution",
    "sigma_fan",
    "smith_normal_form",
    "star_fan",
    "star_subdivision",
    "age_weighted_divisor",
    "total_space_fan",
    "unit_point",
    "validate_fan",
    "xi_g",
]
