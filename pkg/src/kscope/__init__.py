"""kscope: spectral sets of a complex matrix and the family of GMRES
convergence bounds built on them.

Spectral sets: eigenvalues with conditioning, field of values,
eps-pseudospectra (including rectangular Arnoldi-Hessenberg variants).
Bounds: eigenvalue, field-of-values, pseudospectral, and
Crouzeix-Greenbaum curves, their projector-localized refinements, the
pseudospectral family envelope, and adaptive mid-iteration estimates.
"""

from .backend import BACKEND, HAVE_NUMBA
from .linalg import (SpectralData, apply_matrix_polynomial, eigen_full,
                     schur_decompose, smallest_singular_value,
                     solve_least_squares, two_norm)
from .krylov import (ArnoldiDecomposition, GmresHistory, SandwichResult,
                     arnoldi, gmres, harmonic_ritz_values,
                     ideal_gmres_sandwich, ritz_values)
from .sets import (Contour, FovBoundary, RegionGrid, cg_region,
                   extract_contour, fov_boundary, pseudospectrum_grid,
                   pseudospectrum_grid_rect)
from .projectors import (ProjectorSet, SpectralPartition, auto_partition,
                         build_projectors, ew_condition_sum,
                         theorem_gensp_rhs)
from .minimax import (MinimaxResult, asymptotic_rate_estimate,
                      convex_faber_bound, disk_minimax, interval_minimax,
                      minimax_on_points, weighted_l2_min)
from .bounds import (BoundCurve, bound_cg, bound_ev, bound_ev_prime,
                     bound_fov, bound_fov_prime, bound_psa,
                     bound_psa_doubleprime, bound_psa_family,
                     bound_psa_prime, psa_envelope)
from .adaptive import (AdaptiveEstimate, estimate_from_iteration,
                       nested_inclusion_check)
from . import gallery, matio

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "HAVE_NUMBA", "__version__",
    "SpectralData", "apply_matrix_polynomial", "eigen_full",
    "schur_decompose", "smallest_singular_value", "solve_least_squares",
    "two_norm",
    "ArnoldiDecomposition", "GmresHistory", "SandwichResult", "arnoldi",
    "gmres", "harmonic_ritz_values", "ideal_gmres_sandwich", "ritz_values",
    "Contour", "FovBoundary", "RegionGrid", "cg_region", "extract_contour",
    "fov_boundary", "pseudospectrum_grid", "pseudospectrum_grid_rect",
    "ProjectorSet", "SpectralPartition", "auto_partition",
    "build_projectors", "ew_condition_sum", "theorem_gensp_rhs",
    "MinimaxResult", "asymptotic_rate_estimate", "convex_faber_bound",
    "disk_minimax", "interval_minimax", "minimax_on_points",
    "weighted_l2_min",
    "BoundCurve", "bound_cg", "bound_ev", "bound_ev_prime", "bound_fov",
    "bound_fov_prime", "bound_psa", "bound_psa_doubleprime",
    "bound_psa_family", "bound_psa_prime", "psa_envelope",
    "AdaptiveEstimate", "estimate_from_iteration", "nested_inclusion_check",
    "gallery", "matio",
]
