"""Exact linear algebra for nilpotent endomorphisms, sl(2)-triples, matrix Lie
algebras and vector bundles on the projective line."""
from .bundles import (
    BirkhoffFactors,
    SplittingType,
    birkhoff_factorize,
    bundle_ops,
    cokernel_splitting,
    equivariant_model,
    h0_twisted,
    splitting_type,
    validate_transition,
    veronese_inclusion,
)
from .errors import AlgebraError
from .laurent import LaurentMatrix, LaurentPoly
from .lie import (
    LieBasis,
    centralizer_dimension,
    commutant_dimension,
    find_nilpotent,
    lie_closure,
    linear_field_zeros,
    structure_report,
)
from .linalg import Flag, QMatrix, Subspace, image_basis, kernel_basis, rref_canonical, subspace_combine
from .nilpotent import (
    check_complementary_flags,
    flag_refinement,
    jordan_basis,
    nilpotent_profile,
    orbit_curve,
)
from .sl2 import (
    Sl2Triple,
    WeightMultiset,
    clebsch_gordan,
    identify_twisted_irrep,
    irrep_matrices,
    jacobson_morozov,
    sl2_flags_and_projection,
    twisted_irrep_weights,
    veronese_weights,
    weight_multiset,
)

__version__ = "0.1.0"
