"""Affine-invariant Riemannian geometry of positive-definite Hermitian
matrices, Mostow's refinement of the polar decomposition relative to a
Lie-triple subspace, and retraction of complex adjoint orbits onto
compact ones.
"""

from .backend import backend_name
from .adcalc import AdFunction, apply_ad_function, dexp, dexp_inv, gamma_coth
from .linalg import (
    EigenDecomposition,
    check_pd,
    check_unitary,
    eig_hermitian,
    expm,
    hermitian,
    hs_inner,
    inv_sqrtm,
    logm,
    matrix_function,
    skew_hermitian,
    sqrtm,
)
from .manifold import (
    Geodesic,
    act,
    al_kashi_defect,
    dist,
    geodesic_between,
    geodesic_eval,
    geodesic_gap_profile,
    metric_at,
    point_symmetry,
    sectional_curvature_at_identity,
)
from .mostow import (
    MostowFactors,
    ProjectionResult,
    group_decompose,
    mostow_split,
    orthogonality_defect,
    project_to_exp_subspace,
    projection_contraction_check,
)
from .orbits import (
    OrbitFrame,
    RetractionResult,
    affine_orbit_retract,
    frame_from_derivation,
    isotropy_split,
    moment_map_value,
    orbit_retract,
    separation_defect,
)
from .subspaces import (
    SubspaceBasis,
    complement,
    efe_flow,
    orthonormalize,
    triple_closure_defect,
)

__version__ = "0.1.0"
