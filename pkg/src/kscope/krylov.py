"""Arnoldi process, GMRES with full residual history, Ritz extraction,
and sandwich estimates for the worst-case (ideal) GMRES value.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import SingularHk, ZeroInitialVector
from .linalg import TOL_SING, as_matrix, as_vector, eigen_full, two_norm
from .polynomials import ONE, RootPoly, chebyshev_residual

BREAKDOWN_REL = 1e-14


@dataclass
class ArnoldiDecomposition:
    """A V_k = V_{k+1} H~_k with orthonormal V and upper-Hessenberg H~.

    ``v`` has k+1 columns and ``h`` is (k+1) x k with nonnegative
    subdiagonal.  After a lucky breakdown at step j the last row of ``h``
    is exactly zero; if no orthogonal direction was left (j = n), ``v``
    keeps j columns and A V_j = V_j H_j holds with the square block.
    """

    v: np.ndarray
    h: np.ndarray
    breakdown_step: Optional[int] = None

    @property
    def steps(self) -> int:
        return self.h.shape[1]

    @property
    def subdiag(self) -> np.ndarray:
        return np.real(np.diag(self.h, -1))

    def square(self, k=None) -> np.ndarray:
        k = self.steps if k is None else k
        return self.h[:k, :k]

    def rect(self, k=None) -> np.ndarray:
        k = self.steps if k is None else k
        return self.h[:k + 1, :k]

    def residual_norm(self, a) -> float:
        """|| A V_k - V H~_k || with shapes reconciled after breakdown."""
        a = as_matrix(a, square=True)
        k = self.steps
        if self.v.shape[1] == k + 1:
            return two_norm(a @ self.v[:, :k] - self.v @ self.h)
        return two_norm(a @ self.v - self.v @ self.square())

    def orthonormality_defect(self) -> float:
        g = self.v.conj().T @ self.v
        return two_norm(g - np.eye(g.shape[0]))


def _fresh_direction(v):
    """Unit vector orthogonal to the columns of v (deterministic)."""
    n, m = v.shape
    for i in range(n):
        cand = np.zeros(n, dtype=np.complex128)
        cand[i] = 1.0
        cand -= v @ (v.conj().T @ cand)
        nc = np.linalg.norm(cand)
        if nc > 1e-2:
            return cand / nc
    return None


def arnoldi(a, r0, k: int) -> ArnoldiDecomposition:
    """Modified Gram-Schmidt Arnoldi with one unconditional
    reorthogonalization pass.

    Stops early on lucky breakdown (subdiagonal below BREAKDOWN_REL * ||A||),
    returning the truncated decomposition.
    """
    a = as_matrix(a, square=True)
    r0 = as_vector(r0)
    n = a.shape[0]
    if np.linalg.norm(r0) == 0:
        raise ZeroInitialVector("Arnoldi needs a nonzero starting vector")
    k = min(k, n)
    norm_a = two_norm(a)

    v = np.zeros((n, k + 1), dtype=np.complex128)
    h = np.zeros((k + 1, k), dtype=np.complex128)
    v[:, 0] = r0 / np.linalg.norm(r0)
    for j in range(k):
        w = a @ v[:, j]
        for i in range(j + 1):
            hij = np.vdot(v[:, i], w)
            h[i, j] += hij
            w -= hij * v[:, i]
        for i in range(j + 1):  # second pass, unconditionally
            c = np.vdot(v[:, i], w)
            h[i, j] += c
            w -= c * v[:, i]
        beta = np.linalg.norm(w)
        h[j + 1, j] = beta
        if beta <= BREAKDOWN_REL * norm_a:
            h[j + 1, j] = beta  # keep the tiny value; flag the step
            if beta == 0.0:
                nxt = _fresh_direction(v[:, :j + 1])
            else:
                nxt = w / beta
            if nxt is None:
                return ArnoldiDecomposition(v[:, :j + 1], h[:j + 2, :j + 1],
                                            breakdown_step=j + 1)
            v[:, j + 1] = nxt
            return ArnoldiDecomposition(v[:, :j + 2], h[:j + 2, :j + 1],
                                        breakdown_step=j + 1)
        v[:, j + 1] = w / beta
    return ArnoldiDecomposition(v, h, breakdown_step=None)


@dataclass
class GmresHistory:
    """Residual trace of one GMRES run.

    residual_norms[k] is the absolute residual at iteration k (index 0 is
    ||b - A x0||).  residual_poly_roots[k-1] holds the harmonic Ritz
    values (roots of the degree-k residual polynomial) or None when the
    square Hessenberg block was singular at that step.
    """

    residual_norms: np.ndarray
    residual_poly_roots: list
    converged_at: Optional[int]
    decomposition: ArnoldiDecomposition
    x0: np.ndarray
    iterates_available: bool = True
    _r0: np.ndarray = field(default=None, repr=False)

    @property
    def relative_residuals(self) -> np.ndarray:
        return self.residual_norms / self.residual_norms[0]

    def iterate(self, k: int) -> np.ndarray:
        """Materialize x_k = x0 + V_k y_k from the stored decomposition."""
        if k == 0:
            return self.x0.copy()
        dec = self.decomposition
        k = min(k, dec.steps)
        ht = dec.h[:min(k + 1, dec.v.shape[1]), :k]
        beta = self.residual_norms[0]
        rhs = np.zeros(ht.shape[0], dtype=np.complex128)
        rhs[0] = beta
        y = np.linalg.lstsq(ht, rhs, rcond=None)[0]
        return self.x0 + dec.v[:, :k] @ y

    def to_csv(self) -> str:
        lines = ["k,residual_norm,relative_residual"]
        r0 = self.residual_norms[0]
        for k, r in enumerate(self.residual_norms):
            lines.append(f"{k},{r!r},{r / r0!r}")
        return "\n".join(lines) + "\n"


def _givens_residuals(h, beta):
    """Residual norms of the nested least-squares problems on H~.

    One forward sweep of complex Givens rotations [[c, s], [-conj(s), c]]
    (c real); |g_{k+1}| after step k is the GMRES residual norm there.
    """
    kp1, k = h.shape
    r = h.astype(np.complex128).copy()
    g = np.zeros(kp1, dtype=np.complex128)
    g[0] = beta
    cs = np.zeros(k)
    sn = np.zeros(k, dtype=np.complex128)
    out = np.empty(k)
    for j in range(k):
        for i in range(j):
            t = cs[i] * r[i, j] + sn[i] * r[i + 1, j]
            r[i + 1, j] = -np.conj(sn[i]) * r[i, j] + cs[i] * r[i + 1, j]
            r[i, j] = t
        f, gg = r[j, j], r[j + 1, j]
        rad = np.hypot(abs(f), abs(gg))
        if rad == 0.0:
            cs[j], sn[j] = 1.0, 0.0
        elif abs(f) == 0.0:
            cs[j], sn[j] = 0.0, np.conj(gg) / rad
        else:
            cs[j] = abs(f) / rad
            sn[j] = (f / abs(f)) * np.conj(gg) / rad
        t = cs[j] * g[j] + sn[j] * g[j + 1]
        g[j + 1] = -np.conj(sn[j]) * g[j] + cs[j] * g[j + 1]
        g[j] = t
        r[j, j] = cs[j] * f + sn[j] * gg
        r[j + 1, j] = 0.0
        out[j] = abs(g[j + 1])
    return out


def gmres(a, b, x0=None, tol: float = 0.0, maxit: int = None) -> GmresHistory:
    """Full (unrestarted) GMRES, recording the whole residual history.

    The run always performs min(maxit, n) Arnoldi steps (or stops at
    breakdown, which signals exact convergence); ``converged_at`` is the
    first iteration with relative residual <= tol, None if never reached.
    """
    a = as_matrix(a, square=True)
    b = as_vector(b)
    n = a.shape[0]
    x0 = np.zeros(n, dtype=np.complex128) if x0 is None else as_vector(x0)
    maxit = n if maxit is None else min(maxit, n)
    r0 = b - a @ x0
    beta = np.linalg.norm(r0)
    if beta == 0:
        raise ZeroInitialVector("initial residual is zero")

    dec = arnoldi(a, r0, maxit)
    steps = dec.steps
    res = np.empty(steps + 1)
    res[0] = beta
    res[1:] = _givens_residuals(dec.h, beta)
    res = np.minimum.accumulate(res)  # guard 1e-16-level Givens jitter

    roots = []
    for k in range(1, steps + 1):
        try:
            roots.append(harmonic_ritz_values(dec, k))
        except SingularHk:
            roots.append(None)
    converged = None
    rel = res / beta
    hit = np.nonzero(rel[1:] <= tol)[0]
    if hit.size:
        converged = int(hit[0]) + 1
    return GmresHistory(
        residual_norms=res,
        residual_poly_roots=roots,
        converged_at=converged,
        decomposition=dec,
        x0=x0,
        _r0=r0,
    )


def ritz_values(dec: ArnoldiDecomposition, k: int = None) -> np.ndarray:
    """Eigenvalues of the square Hessenberg block H_k."""
    k = dec.steps if k is None else k
    if k > dec.steps:
        raise ValueError("k exceeds available Arnoldi steps")
    return scipy.linalg.eigvals(dec.square(k))


def harmonic_ritz_values(dec: ArnoldiDecomposition, k: int = None) -> np.ndarray:
    """Roots of the GMRES residual polynomial at step k.

    Eigenvalues of H_k + h_{k+1,k}^2 f e_k^* with f = H_k^{-*} e_k.
    Raises SingularHk when H_k is numerically singular.
    """
    k = dec.steps if k is None else k
    if k > dec.steps:
        raise ValueError("k exceeds available Arnoldi steps")
    hk = dec.square(k)
    sv = scipy.linalg.svdvals(hk)
    if sv[-1] < TOL_SING * max(sv[0], 1e-300):
        raise SingularHk(f"H_{k} is numerically singular")
    hsub = dec.h[k, k - 1] if dec.h.shape[0] > k else 0.0
    ek = np.zeros(k, dtype=np.complex128)
    ek[-1] = 1.0
    f = scipy.linalg.solve(hk.conj().T, ek)
    m = hk + (hsub ** 2) * np.outer(f, ek.conj())
    return scipy.linalg.eigvals(m)


# ---------------------------------------------------------------------------
# ideal GMRES sandwich


@dataclass
class SandwichResult:
    """Bracketing of the ideal GMRES value min_{p(0)=1} ||p(A)||.

    lower[k]: best observed ||r_k||/||r_0|| over random trial runs (every
    run is at most the worst case, which is at most the ideal value).
    upper[k]: smallest ||p(A)|| over explicit candidate polynomials
    (harmonic-Ritz root polynomials from the trials, cluster-annihilating
    Chebyshev compositions, centroid powers, and p = 1).
    """

    lower: np.ndarray
    upper: np.ndarray
    trials: int
    seed: int


def _candidate_polys(spec, kmax, trial_roots):
    """Candidate residual polynomials per degree k = 1..kmax."""
    eigs = spec.eigenvalues
    scale = max(np.abs(eigs).max(), 1e-300)
    # multiple roots at every flagged cluster eliminate defective blocks
    outlier = []
    for c in sorted(spec.clusters, key=len, reverse=True):
        if len(c) > 1:
            outlier.extend([np.mean(eigs[c])] * len(c))
    rest_mask = np.ones(len(eigs), dtype=bool)
    for c in spec.clusters:
        if len(c) > 1:
            rest_mask[c] = False
    rest = eigs[rest_mask]

    def tail_poly(deg):
        # residual polynomial for the non-defective part of the spectrum
        if deg <= 0 or len(rest) == 0:
            return ONE
        if np.all(np.abs(rest.imag) <= 1e-9 * scale) and rest.real.min() > 1e-12 * scale:
            lo, hi = rest.real.min(), rest.real.max()
            if hi > lo:
                return chebyshev_residual(lo, hi, deg)
            return RootPoly([lo] * deg)
        c = np.mean(rest)
        if abs(c) > 1e-12 * scale:
            return RootPoly([c] * deg)
        return ONE

    cands = {k: [ONE] for k in range(1, kmax + 1)}
    centroid = np.mean(eigs)
    for k in range(1, kmax + 1):
        if abs(centroid) > 1e-12 * scale:
            cands[k].append(RootPoly([centroid] * k))
        nann = min(len(outlier), k)
        for j in {0, nann}:
            tp = tail_poly(k - j)
            roots = list(outlier[:j]) + list(getattr(tp, "roots", []))
            if roots:
                cands[k].append(RootPoly(roots))
        for roots in trial_roots.get(k, []):
            if np.all(np.abs(roots) > 1e-13 * scale):
                cands[k].append(RootPoly(roots))
    return cands


def ideal_gmres_sandwich(a, kmax: int, trials: int = 8, seed: int = 0) -> SandwichResult:
    """Bracket the ideal GMRES value between observed runs and candidate norms."""
    a = as_matrix(a, square=True)
    if trials < 1:
        raise ValueError("need at least one trial")
    n = a.shape[0]
    kmax = min(kmax, n)
    rng = np.random.default_rng(seed)
    spec = eigen_full(a)

    lower = np.zeros(kmax + 1)
    lower[0] = 1.0
    trial_roots = {}
    for _ in range(trials):
        r0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        r0 /= np.linalg.norm(r0)
        hist = gmres(a, r0, maxit=kmax)
        rel = hist.relative_residuals
        padded = np.concatenate([rel, np.full(kmax + 1 - len(rel), rel[-1])])
        lower = np.maximum(lower, padded)
        for k, roots in enumerate(hist.residual_poly_roots, start=1):
            if roots is not None:
                trial_roots.setdefault(k, []).append(roots)

    cands = _candidate_polys(spec, kmax, trial_roots)
    upper = np.empty(kmax + 1)
    upper[0] = 1.0
    for k in range(1, kmax + 1):
        best = min(two_norm(p.at_matrix(a)) for p in cands[k])
        upper[k] = min(best, upper[k - 1])
    return SandwichResult(lower=lower, upper=upper, trials=trials, seed=seed)
