"""Mid-iteration convergence estimates from Arnoldi Hessenberg pseudospectra,
plus the inclusion certificates that make them trustworthy.

Estimate curves are PSA-shaped but flagged ``estimate=True``: level sets of
H_k or H~_k stand in for those of A, so they are indications, not bounds.
The certificates are theorems and must hold exactly (up to roundoff): Ritz
values lie in the eps-pseudospectrum of A for eps = h_{k+1,k}, harmonic
Ritz values for eps = h_{k+1,k} + h_{k+1,k}^2 / sigma_min(H_k), and the
rectangular level sets are nested across iterations.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .bounds import bound_psa_family
from .errors import SingularHk
from .krylov import ArnoldiDecomposition, harmonic_ritz_values, ritz_values
from .linalg import as_matrix, schur_decompose, smallest_singular_value
from .sets import auto_box, pseudospectrum_grid_rect
from . import kernels


@dataclass
class RitzCertificate:
    kind: str                # "ritz" or "harmonic"
    value: complex
    smin_at_value: float
    epsilon_bound: float
    satisfied: bool


@dataclass
class AdaptiveEstimate:
    at_iteration: int
    curves: list                      # BoundCurve, estimate=True, notes name the source
    ritz_certificates: list
    grid_square: object = None
    grid_rect: object = None
    inclusion_report: Optional[dict] = None


def _subdiag_entry(dec: ArnoldiDecomposition, k: int) -> float:
    if dec.h.shape[0] > k:
        return float(np.real(dec.h[k, k - 1]))
    return 0.0


def _certificates(dec, k, t_full):
    """Proposition-style inclusion certificates against the full matrix."""
    n = t_full.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    h = _subdiag_entry(dec, k)
    out = []
    for theta in ritz_values(dec, k):
        smin = kernels.smin_triangular(theta * eye - t_full)
        out.append(RitzCertificate("ritz", theta, smin, h, smin <= h + 1e-10))
    try:
        hk = dec.square(k)
        smin_hk = float(scipy.linalg.svdvals(hk)[-1])
        eps_h = h + h * h / smin_hk
        for theta in harmonic_ritz_values(dec, k):
            smin = kernels.smin_triangular(theta * eye - t_full)
            out.append(RitzCertificate("harmonic", theta, smin, eps_h,
                                       smin <= eps_h + 1e-10))
    except SingularHk:
        pass
    return out


def ritz_inclusion_certificates(dec: ArnoldiDecomposition, k: int, a) -> list:
    """Certificates that Ritz / harmonic Ritz values at step k lie in the
    predicted pseudospectra of the full matrix."""
    _, t_full = schur_decompose(as_matrix(a, square=True))
    return _certificates(dec, k, t_full)


def estimate_from_iteration(dec: ArnoldiDecomposition, k: int, eps_list, kmax: int,
                            a=None, box=None, nx: int = 150, ny: int = 150
                            ) -> AdaptiveEstimate:
    """PSA-form estimate curves from the square and rectangular Hessenberg
    pseudospectra at iteration k.

    When the full matrix is supplied, its grid box is reused (like-for-like
    level sets) and the Ritz certificates are evaluated against it; in
    matrix-free mode the certificates are replaced by the internal nested-
    inclusion report.
    """
    if k > dec.steps:
        raise ValueError("k exceeds available Arnoldi steps")
    hk = dec.square(k)
    ht = dec.rect(k)
    if box is None:
        if a is not None:
            box = auto_box(as_matrix(a, square=True))
        else:
            box = auto_box(hk)
    grid_sq = pseudospectrum_grid_rect(hk, box, nx=nx, ny=ny)
    grid_rect = pseudospectrum_grid_rect(ht, box, nx=nx, ny=ny)

    curves = []
    for grid, src in ((grid_sq, "H_k"), (grid_rect, "H~_k")):
        for c in bound_psa_family(grid, kmax, eps_list):
            c.estimate = True
            c.notes = (c.notes + "; " if c.notes else "") + f"from {src} at k={k}"
            curves.append(c)

    certificates = []
    report = None
    if a is not None:
        _, t_full = schur_decompose(as_matrix(a, square=True))
        certificates = _certificates(dec, k, t_full)
    else:
        pts = ritz_values(dec, k)
        report = nested_inclusion_check(dec, pts)
    return AdaptiveEstimate(
        at_iteration=k,
        curves=curves,
        ritz_certificates=certificates,
        grid_square=grid_sq,
        grid_rect=grid_rect,
        inclusion_report=report,
    )


def nested_inclusion_check(dec: ArnoldiDecomposition, sample_points) -> dict:
    """Verify the nesting of rectangular Hessenberg level sets.

    At each sample point z: sigma_min(z I~_j - H~_j) must be nonincreasing
    in j, and the square/rectangular values must satisfy
    sigma_min(rect) <= sigma_min(square) + h_{j+1,j}.  Returns a report
    with any violations (an empty list, unless something is broken).
    """
    if dec.steps < 2:
        raise ValueError("need at least two Arnoldi steps")
    pts = np.asarray(sample_points, dtype=np.complex128).ravel()
    steps = dec.steps
    smin_rect = np.empty((steps, len(pts)))
    smin_sq = np.empty((steps, len(pts)))
    for j in range(1, steps + 1):
        ht = dec.rect(j) if dec.h.shape[0] > j else dec.square(j)
        hs = dec.square(j)
        for i, z in enumerate(pts):
            eye_r = np.eye(ht.shape[0], ht.shape[1], dtype=np.complex128)
            smin_rect[j - 1, i] = smallest_singular_value(z * eye_r - ht)
            smin_sq[j - 1, i] = smallest_singular_value(
                z * np.eye(j, dtype=np.complex128) - hs)
    violations = []
    for i, z in enumerate(pts):
        for j in range(1, steps):
            if smin_rect[j, i] > smin_rect[j - 1, i] + 1e-10:
                violations.append(("monotonicity", complex(z), j + 1,
                                   smin_rect[j - 1, i], smin_rect[j, i]))
        for j in range(1, steps + 1):
            h = _subdiag_entry(dec, j)
            if smin_rect[j - 1, i] > smin_sq[j - 1, i] + h + 1e-10:
                violations.append(("square-vs-rect", complex(z), j,
                                   smin_sq[j - 1, i] + h, smin_rect[j - 1, i]))
    return {
        "points": pts,
        "smin_rect": smin_rect,
        "smin_square": smin_sq,
        "violations": violations,
    }
