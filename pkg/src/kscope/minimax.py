"""Constrained complex approximation: min over degree-k polynomials with
p(0) = 1 of max |p(z)| over finite point sets, plus the closed-form
interval/disk/convex-set values.

The engine is a Lawson-style iteratively reweighted least-squares scheme
on the shifted-and-scaled monomial basis ((z - c)/r)^i with the p(0) = 1
constraint eliminated.  The weighted-LS optimum at normalized weights is
itself a lower bound on the minimax value, which yields an honest
certificate gap.  A grouped variant minimizes a weighted sum of per-group
maxima (the objective of the projector-localized bounds); its output is a
feasible polynomial, so the reported value is always a valid bound.
"""

from dataclasses import dataclass

import numpy as np

from .errors import IntervalContainsOrigin, RepeatedEigenvalues
from .polynomials import ONE, RootPoly, ShiftedPoly

LAWSON_TOL = 1e-10
LAWSON_MAXIT = 500


def _basis(points, center, scale, k):
    """Columns psi_i(z) = ((z-c)/s)^i - ((-c)/s)^i, i = 1..k."""
    w = (points - center) / scale
    w0 = (-center) / scale
    cols = np.empty((len(points), k), dtype=np.complex128)
    wp = np.ones_like(w)
    w0p = 1.0 + 0j
    for i in range(k):
        wp = wp * w
        w0p = w0p * w0
        cols[:, i] = wp - w0p
    return cols


def _weighted_ls(psi, weights):
    """ShiftedPoly coefficients minimizing sum w_i |1 + (psi a)_i|^2."""
    sw = np.sqrt(weights)
    a, *_ = np.linalg.lstsq(sw[:, None] * psi, -sw.astype(np.complex128), rcond=None)
    return a


@dataclass
class MinimaxResult:
    value: float
    poly: ShiftedPoly
    iterations: int
    certificate_gap: float
    converged: bool = True

    @property
    def coeffs(self):
        """Coefficients a_1..a_k in the eliminated shifted basis."""
        return self.poly.coeffs

    def __call__(self, z):
        return self.poly(z)


def _interpolation_poly(points, k):
    """RootPoly vanishing on all distinct points when k allows it."""
    distinct = np.unique(points)
    if len(distinct) <= k and np.all(np.abs(distinct) > 1e-14):
        return RootPoly(distinct)
    return None


def minimax_on_points(points, k: int) -> MinimaxResult:
    """min over p in P_k, p(0) = 1, of max_i |p(z_i)|.

    When k reaches the number of distinct points (all away from 0) the
    minimum is exactly 0 by interpolation.  Otherwise Lawson iteration;
    non-convergence is reported through ``converged``/``certificate_gap``,
    never raised.
    """
    points = np.asarray(points, dtype=np.complex128).ravel()
    if points.size == 0:
        raise ValueError("need at least one point")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k == 0:
        return MinimaxResult(1.0, ONE, 0, 0.0)

    interp = _interpolation_poly(points, k)
    if interp is not None:
        vals = np.abs(interp(points))
        center = np.mean(points)
        scale = max(np.abs(points - center).max(), 1e-300)
        shifted = _roots_to_shifted(interp, center, scale, k)
        return MinimaxResult(float(vals.max()), shifted, 0, 0.0)

    value, poly, iters, gap, conv = _lawson(
        [(points, 1.0)], k, LAWSON_TOL, LAWSON_MAXIT
    )
    return MinimaxResult(value, poly, iters, gap, conv)


def _roots_to_shifted(rp: RootPoly, center, scale, k):
    """Exact conversion of a RootPoly into the shifted eliminated basis."""
    # expand prod (1 - z/r) in powers of w = (z - c)/s: z = c + s w
    coeffs = np.array([1.0 + 0j])
    for r in rp.roots:
        # (1 - (c + s w)/r) = (1 - c/r) - (s/r) w
        nxt = np.zeros(len(coeffs) + 1, dtype=np.complex128)
        nxt[:-1] += coeffs * (1.0 - center / r)
        nxt[1:] += coeffs * (-scale / r)
        coeffs = nxt
    a = np.zeros(k, dtype=np.complex128)
    a[:len(coeffs) - 1] = coeffs[1:]
    return ShiftedPoly(center, scale, a)


def _lawson(groups, k, tol, maxit):
    """Grouped Lawson iteration.

    groups: list of (points, weight).  Minimizes (heuristically)
    sum_j weight_j * max over group j of |p|, tracking the best feasible
    iterate so the returned value is always achieved by the returned p.
    Returns (value, poly, iterations, certificate_gap, converged).
    """
    pts = np.concatenate([np.asarray(g, dtype=np.complex128).ravel() for g, _ in groups])
    gw = np.array([w for _, w in groups], dtype=float)
    sizes = [len(np.asarray(g).ravel()) for g, _ in groups]
    slices = np.concatenate([[0], np.cumsum(sizes)])
    center = np.mean(pts)
    scale = max(np.abs(pts - center).max(), 1e-300)
    psi = _basis(pts, center, scale, k)

    omega = np.concatenate([
        np.full(sz, w / max(sz, 1)) for sz, (_, w) in zip(sizes, groups)
    ])
    omega = omega / omega.sum()

    best_val = np.inf
    best_poly = ONE
    best_lower = 0.0
    prev = np.inf
    converged = False
    it = 0
    for it in range(1, maxit + 1):
        a = _weighted_ls(psi, omega)
        pv = np.abs(1.0 + psi @ a)
        gmax = np.array([pv[slices[j]:slices[j + 1]].max(initial=0.0)
                         for j in range(len(groups))])
        val = float(gw @ gmax)
        if val < best_val:
            best_val = val
            best_poly = ShiftedPoly(center, scale, a)
        if len(groups) == 1:
            # weighted-LS optimum at normalized weights lower-bounds the minimax
            lower = float(np.sqrt(np.sum(omega * pv ** 2)) * gw[0])
            best_lower = max(best_lower, lower)
        if abs(val - prev) <= tol * max(val, 1e-300):
            converged = True
            break
        prev = val
        if best_val == 0.0:
            converged = True
            break
        omega = omega * pv
        # per-group pooling: group mass follows its share of the objective
        tot = float(gw @ gmax)
        for j in range(len(groups)):
            seg = omega[slices[j]:slices[j + 1]]
            mass = seg.sum()
            target = gw[j] * gmax[j] / tot if tot > 0 else 1.0 / len(groups)
            if mass > 0:
                omega[slices[j]:slices[j + 1]] = seg * (target / mass)
            else:
                omega[slices[j]:slices[j + 1]] = target / max(len(seg), 1)
        s = omega.sum()
        omega = omega / s if s > 0 else np.full_like(omega, 1.0 / len(omega))

    gap = float(best_val - best_lower) if len(groups) == 1 else float("nan")
    return best_val, best_poly, it, gap, converged


def weighted_group_minimax(groups, k: int):
    """min over p(0)=1 of sum_j w_j max_{z in S_j} |p(z)| (heuristic min,
    exact evaluation).  Returns (value, poly)."""
    if k == 0:
        return float(sum(w for _, w in groups)), ONE
    # joint interpolation shortcut
    pts = np.concatenate([np.asarray(g, dtype=np.complex128).ravel() for g, _ in groups])
    interp = _interpolation_poly(pts, k)
    if interp is not None:
        return 0.0, interp
    value, poly, _, _, _ = _lawson(groups, k, LAWSON_TOL, LAWSON_MAXIT)
    return value, poly


def interval_minimax(a: float, b: float, k: int) -> float:
    """Exact minimax value on a real interval [a, b], 0 < a < b:
    1/|T_k((b+a)/(b-a))| by scaled-and-shifted Chebyshev polynomials."""
    if a <= 0 <= b:
        raise IntervalContainsOrigin("interval [a, b] must exclude the origin")
    if not (0 < a < b):
        raise ValueError("need 0 < a < b")
    if k == 0:
        return 1.0
    m = (b + a) / (b - a)
    return float(1.0 / np.cosh(k * np.arccosh(m)))


def disk_minimax(center, radius: float, k: int) -> float:
    """Exact minimax value on a closed disk: (radius/|center|)^k, or 1
    when the disk contains the origin."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    c = abs(center)
    if c <= radius:
        return 1.0
    return float((radius / c) ** k)


def convex_faber_bound(rho: float, k: int) -> float:
    """Upper bound 2 rho^k / (1 - rho^k) for the minimax value on a convex
    set with asymptotic rate rho."""
    if not (0 < rho < 1):
        raise ValueError("rho must lie in (0, 1)")
    if k < 1:
        raise ValueError("k must be >= 1")
    return float(2.0 * rho ** k / (1.0 - rho ** k))


def asymptotic_rate_estimate(boundary, k_lo: int = 5, k_hi: int = 15) -> float:
    """Geometric-mean slope of the minimax values between two degrees.

    ``boundary`` is a Contour or FovBoundary.  Returns 1.0 when the
    boundary encloses the origin (no convergence rate exists).
    """
    from .sets import Contour, FovBoundary, sample_polyline

    if k_hi <= k_lo:
        raise ValueError("need k_hi > k_lo")
    n_samples = max(400, 20 * k_hi)
    if isinstance(boundary, Contour):
        if boundary.encloses_origin:
            return 1.0
        samples = boundary.sample(n_samples)
    elif isinstance(boundary, FovBoundary):
        if np.all(boundary.contains(np.array([0.0 + 0j]), slack=0.0)):
            return 1.0
        samples = sample_polyline(boundary.closed(), n_samples)
    else:
        samples = np.asarray(boundary, dtype=np.complex128).ravel()
        if samples.size == 0:
            raise ValueError("empty boundary")
    v_lo = minimax_on_points(samples, k_lo).value
    v_hi = minimax_on_points(samples, k_hi).value
    if v_lo <= 0 or v_hi <= 0:
        return 0.0
    return float((v_hi / v_lo) ** (1.0 / (k_hi - k_lo)))


def weighted_l2_min(eigs, weights, k: int) -> float:
    """Exact min over p(0)=1 of || diag(p(lambda_j)) c ||_2 with c_j the
    supplied weights; the constraint is eliminated and the rest is one
    least-squares solve."""
    eigs = np.asarray(eigs, dtype=np.complex128).ravel()
    c = np.asarray(weights, dtype=float).ravel()
    if eigs.size != c.size:
        raise ValueError("eigenvalue/weight length mismatch")
    scale = max(np.abs(eigs).max(), 1e-300)
    d = np.abs(eigs[:, None] - eigs[None, :]) + np.eye(len(eigs)) * scale
    if d.min() < 1e-12 * scale:
        raise RepeatedEigenvalues("weighted_l2_min needs simple eigenvalues")
    if k == 0:
        return float(np.linalg.norm(c))
    center = np.mean(eigs)
    r = max(np.abs(eigs - center).max(), 1e-300)
    psi = _basis(eigs, center, r, k)
    a, *_ = np.linalg.lstsq(c[:, None] * psi, -c.astype(np.complex128), rcond=None)
    return float(np.linalg.norm(c * (1.0 + psi @ a)))
