"""Weighted and stratified homology of divisibly-weighted simplicial complexes."""

from .chains import (
    ChainComplexData,
    MapKind,
    SimplicialMapData,
    chain_complex,
    induced_chain_map,
    relative_weighted_boundary,
    weighted_boundary,
)
from .complex import (
    INF,
    SimplexClass,
    WeightedComplex,
    build_complex,
    cartesian_product,
    classify,
    n_stage_subcomplex,
    singular_subcomplex,
)
from .errors import OrbihomError
from .exactalg import HomologyGroup, IntMatrix, SmithDecomposition, homology_from_boundaries, smith_normal_form
from .generators import ExampleSpec, connected_sum_surface, generate, generate_random
from .homology import (
    ST,
    WT,
    CoefficientRing,
    HomologyProfile,
    Theory,
    euler_check,
    homology,
    homology_with_coefficients,
    induced_homology_map,
    n_stage_st_homology,
    st_homology,
    wt_homology,
)
from .subdivision import (
    SubdivisionRecord,
    barycentric_subdivide,
    pi_projection,
    sd_chain_map,
    verify_subdivision_invariance,
)
from .textio import format_complex, parse_complex, read_complex, write_complex

__version__ = "0.1.0"
