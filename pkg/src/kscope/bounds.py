"""Per-iteration GMRES convergence bound curves.

Every curve is ``constant * m_k`` where m_k is a polynomial minimax value
on the relevant spectral set.  Curves are made monotone by a running
minimum over degrees (a lower-degree polynomial is admissible at any
higher degree, so this stays a valid bound).  Inapplicable bounds (the
set encloses the origin, or the constant is infinite) carry flat all-ones
values so reports can render them as the flat lines they are.
"""

import io
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ResolventBoundViolated
from .krylov import SandwichResult
from .linalg import SpectralData, as_matrix, schur_decompose, two_norm
from .minimax import minimax_on_points, weighted_group_minimax
from .projectors import ProjectorSet
from .sets import (Contour, FovBoundary, auto_box, extract_contour,
                   polygon_signed_distance, pseudospectrum_grid, sample_polyline)

C_FOV = 1.0 + np.sqrt(2.0)
C_FOV_CONJECTURED = 2.0
C_CG = 3.0 + 2.0 * np.sqrt(3.0)

# epsilon decades used for PSA families unless the caller chooses
DEFAULT_EPS = tuple(10.0 ** (-e) for e in range(1, 10))


@dataclass
class BoundCurve:
    kind: str                 # EV, EV', FOV, FOV', PSA, PSA', PSA'', CG
    constant: float           # may be +inf (recorded, values then all 1.0)
    values: np.ndarray        # values[k] for k = 0..kmax
    applicable: bool
    epsilon: Optional[float] = None
    estimate: bool = False
    notes: str = ""

    @property
    def kmax(self) -> int:
        return len(self.values) - 1


def _flat(kmax):
    return np.ones(kmax + 1)


def _monotone(values):
    return np.minimum.accumulate(np.asarray(values, dtype=float))


def _sample_count(kmax):
    return max(400, 20 * kmax)


def bound_ev(spec: SpectralData, kmax: int) -> BoundCurve:
    """kappa(V) * min max over the discrete spectrum."""
    if spec.defective:
        return BoundCurve("EV", np.inf, _flat(kmax), False,
                          notes="kappa(V) is infinite (defective matrix)")
    eigs = spec.eigenvalues
    vals = [spec.kappa_V * minimax_on_points(eigs, k).value for k in range(kmax + 1)]
    return BoundCurve("EV", spec.kappa_V, _monotone(vals), True)


def bound_ev_prime(spec: SpectralData, kmax: int) -> BoundCurve:
    """sqrt(n) * min || p(Lambda) c ||_2 with c_j the eigenvalue condition
    numbers; needs simple eigenvalues."""
    n = len(spec.eigenvalues)
    if spec.has_clusters or not np.all(np.isfinite(spec.kappa_lambda)):
        return BoundCurve("EV'", np.sqrt(n), _flat(kmax), False,
                          notes="repeated eigenvalues")
    from .minimax import weighted_l2_min

    c = np.sqrt(n)
    vals = [c * weighted_l2_min(spec.eigenvalues, spec.kappa_lambda, k)
            for k in range(kmax + 1)]
    return BoundCurve("EV'", c, _monotone(vals), True)


def _fov_excludes_origin(fov: FovBoundary) -> bool:
    d = polygon_signed_distance(fov.vertices, np.array([0.0 + 0j]))
    return bool(d[0] > 0.0)


def bound_fov(fov: FovBoundary, kmax: int, conjectured_constant: bool = False
              ) -> BoundCurve:
    """(1 + sqrt 2) * min max over the field of values."""
    c = C_FOV_CONJECTURED if conjectured_constant else C_FOV
    if not _fov_excludes_origin(fov):
        return BoundCurve("FOV", c, _flat(kmax), False,
                          notes="0 lies in the field of values")
    samples = sample_polyline(fov.closed(), _sample_count(kmax))
    vals = [c * minimax_on_points(samples, k).value for k in range(kmax + 1)]
    return BoundCurve("FOV", c, _monotone(vals), True)


def bound_fov_prime(pset: ProjectorSet, kmax: int, fov_angles: int = 256,
                    conjectured_constant: bool = False) -> BoundCurve:
    """Localized field-of-values bound: the projector-weighted sum of
    per-group maxima over the compressed fields of values, minimized
    jointly over one polynomial."""
    from .sets import fov_boundary

    c = C_FOV_CONJECTURED if conjectured_constant else C_FOV
    groups = []
    blocked = []
    for g in pset.groups:
        fov = fov_boundary(g.compressed, m=fov_angles)
        if not _fov_excludes_origin(fov):
            blocked.append(g.indices)
        groups.append((sample_polyline(fov.closed(), _sample_count(kmax)), g.norm_p))
    if blocked:
        return BoundCurve("FOV'", c, _flat(kmax), False,
                          notes=f"{len(blocked)} group field(s) of values contain 0")
    vals = [c * weighted_group_minimax(groups, k)[0] for k in range(kmax + 1)]
    return BoundCurve("FOV'", c, _monotone(vals), True)


def bound_psa_contour(contour: Contour, kmax: int) -> BoundCurve:
    """L(Gamma_eps)/(2 pi eps) * min max over the level set."""
    c = contour.length / (2.0 * np.pi * contour.epsilon)
    notes = "contour clipped by grid box" if contour.touches_boundary else ""
    if contour.encloses_origin or not contour.loops:
        return BoundCurve("PSA", c, _flat(kmax), False, epsilon=contour.epsilon,
                          notes=notes or "level set encloses the origin")
    samples = contour.sample(_sample_count(kmax))
    vals = [c * minimax_on_points(samples, k).value for k in range(kmax + 1)]
    return BoundCurve("PSA", c, _monotone(vals), True, epsilon=contour.epsilon,
                      notes=notes)


def bound_psa(grid, eps: float, kmax: int) -> BoundCurve:
    return bound_psa_contour(extract_contour(grid, eps), kmax)


def bound_psa_family(grid, kmax: int, eps_list=DEFAULT_EPS) -> list:
    """One PSA curve per epsilon, pruned to levels the grid can resolve."""
    vmin, vmax = grid.values.min(), grid.values.max()
    out = []
    for eps in eps_list:
        if vmin < eps < vmax:
            out.append(bound_psa(grid, eps, kmax))
    return out


def bound_psa_prime(pset: ProjectorSet, eps: float, kmax: int,
                    nx: int = 150, ny: int = 150) -> BoundCurve:
    """Localized pseudospectral bound: per-group level sets of the
    compressed matrices, weighted by ||P_j|| L_j/(2 pi eps)."""
    groups = []
    enclosing = 0
    for g in pset.groups:
        grid = pseudospectrum_grid(g.compressed, box=auto_box(g.compressed), nx=nx, ny=ny)
        vmin, vmax = grid.values.min(), grid.values.max()
        if not (vmin < eps < vmax):
            return BoundCurve("PSA'", np.nan, _flat(kmax), False, epsilon=eps,
                              notes="epsilon outside a compressed grid range")
        contour = extract_contour(grid, eps)
        if contour.encloses_origin:
            enclosing += 1
        w = g.norm_p * contour.length / (2.0 * np.pi * eps)
        groups.append((contour.sample(_sample_count(kmax)), w))
    constant = float(sum(w for _, w in groups))
    if enclosing:
        return BoundCurve("PSA'", constant, _flat(kmax), False, epsilon=eps,
                          notes=f"{enclosing} compressed level set(s) enclose the origin")
    vals = [weighted_group_minimax(groups, k)[0] for k in range(kmax + 1)]
    return BoundCurve("PSA'", constant, _monotone(vals), True, epsilon=eps)


def bound_psa_doubleprime(a, curve_eps_pairs, kmax: int,
                          validate: bool = True) -> BoundCurve:
    """Multi-contour pseudospectral bound: sum over non-intersecting
    Jordan curves of L_j/(2 pi eps_j) max over the curve, one polynomial.

    Each supplied eps_j must satisfy the resolvent bound on its curve:
    eps_j <= sigma_min(z I - A) at every curve vertex.
    """
    a = as_matrix(a, square=True)
    _, t = schur_decompose(a)
    from . import kernels

    # roundoff allowance for the vertex-level resolvent check: shifts of
    # size eps near a diagonal entry are formed with absolute error on the
    # order of machine epsilon times the matrix scale
    scale = float(np.abs(t).max())
    groups = []
    enclosing = 0
    for contour, eps in curve_eps_pairs:
        slack = 1e-9 * eps + 1e-12 * scale
        if validate:
            for lp in contour.loops:
                for z in lp[:-1]:
                    u = z * np.eye(t.shape[0], dtype=np.complex128) - t
                    if kernels.smin_triangular(np.triu(u)) < eps - slack:
                        raise ResolventBoundViolated(
                            f"sigma_min(zI - A) < eps at z = {z:.6g} for eps = {eps:g}"
                        )
        if contour.encloses_origin:
            enclosing += 1
        w = contour.length / (2.0 * np.pi * eps)
        groups.append((contour.sample(_sample_count(kmax)), w))
    constant = float(sum(w for _, w in groups))
    if enclosing:
        return BoundCurve("PSA''", constant, _flat(kmax), False,
                          notes=f"{enclosing} curve(s) enclose the origin")
    vals = [weighted_group_minimax(groups, k)[0] for k in range(kmax + 1)]
    return BoundCurve("PSA''", constant, _monotone(vals), True)


def bound_cg(cg: Contour, kmax: int) -> BoundCurve:
    """(3 + 2 sqrt 3) * min max over the Crouzeix-Greenbaum region."""
    if cg.encloses_origin or not cg.loops:
        return BoundCurve("CG", C_CG, _flat(kmax), False,
                          notes="region surrounds the origin"
                          if cg.encloses_origin else "empty region")
    samples = cg.sample(_sample_count(kmax))
    vals = [C_CG * minimax_on_points(samples, k).value for k in range(kmax + 1)]
    return BoundCurve("CG", C_CG, _monotone(vals), True)


def psa_envelope(curves) -> BoundCurve:
    """Pointwise minimum of a PSA family; the winning epsilon per k is
    recorded in the notes."""
    usable = [c for c in curves if c.applicable]
    if not usable:
        raise ValueError("no applicable curve to build an envelope from")
    kmax = min(c.kmax for c in usable)
    table = np.vstack([c.values[:kmax + 1] for c in usable])
    winner = np.argmin(table, axis=0)
    values = table[winner, np.arange(kmax + 1)]
    eps = [usable[w].epsilon for w in winner]
    notes = "winning eps per k: " + ",".join(
        "none" if e is None else f"{e:g}" for e in eps)
    return BoundCurve("PSA", float("nan"), values, True, epsilon=None, notes=notes)


# ---------------------------------------------------------------------------
# serialization


def curves_to_csv(curves, include_estimate_column: bool = False) -> str:
    buf = io.StringIO()
    header = "kind,epsilon,constant,k,value,applicable"
    if include_estimate_column:
        header += ",estimate"
    buf.write(header + "\n")
    for c in curves:
        eps = "" if c.epsilon is None else repr(float(c.epsilon))
        for k, v in enumerate(c.values):
            row = f"{c.kind},{eps},{c.constant!r},{k},{v!r},{c.applicable}"
            if include_estimate_column:
                row += f",{c.estimate}"
            buf.write(row + "\n")
    return buf.getvalue()


def sandwich_to_csv(s: SandwichResult) -> str:
    lines = ["k,lower,upper"]
    for k in range(len(s.lower)):
        lines.append(f"{k},{s.lower[k]!r},{s.upper[k]!r}")
    return "\n".join(lines) + "\n"
