"""Exact degree growth of rational self-maps and their fibrations.

Monomial maps go through exponent matrices, general maps of P^k through
sparse integer polynomials, and fibered systems combine the two with exact
intersection numbers on products of projective spaces.
"""

from .cohomology import (
    CohomologyClass,
    CohomologyError,
    MultiProjSpace,
    alpha_coeffs,
    cup,
    integrate,
    is_effective,
    mass,
)
from .fibered import (
    DegenerateOrbitError,
    Factor,
    MonomialTriangularSystem,
    ProductSystem,
    RelativeSequence,
    SkewSystem,
    UnsupportedError,
    abc_sequences,
    relative_sequence_orbit,
    relative_sequence_product,
    relative_sequence_triangular,
    system_profiles,
    verify_b_convergence,
    verify_distinct_degrees,
    verify_equal_dimension,
    verify_power_rule,
    verify_product_formula,
    verify_relative_profile,
)
from .monomial import (
    DimensionCapError,
    DominanceError,
    ExponentMatrix,
    FibrationError,
    block_fibration,
    char_poly,
    degree_sequence,
    delta_p,
    dynamical_degrees_exact,
    homogenization_degree,
    relative_degrees_exact,
)
from .parser import ParseError
from .polytope import LatticePolytope, PolytopeError, convex_hull, minkowski_sum, mixed_volume, simplex, volume
from .profiles import DegreeProfile, DegreeSequence, check_log_concavity
from .rational import (
    NonDominantError,
    ProjectiveRationalMap,
    compose,
    conjugate,
    degree_sequence_d1,
    estimate_d1,
    gcd_reduce,
    is_dominant,
    parse_map,
)

__version__ = "0.1.0"
