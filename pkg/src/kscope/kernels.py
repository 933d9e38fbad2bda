"""Hot kernels for pseudospectra grids: sigma_min(z I - M) swept over a grid.

Two implementations selected by :mod:`kscope.backend`:

* numba: the matrix is reduced once (Schur for a square A, Givens QR per
  node for Hessenberg input), and sigma_min of the shifted *triangular*
  matrix is found by inverse Lanczos iteration driven by triangular
  solves -- O(m^2) per node instead of a full SVD.
* numpy: per-node LAPACK ``svdvals`` on the same shifted matrix.

Both paths return identical values up to roundoff; ``benchmarks/bench_grid.py``
times them against each other.

Grid convention: ``values[iy, ix] = sigma_min((x[ix] + 1j*y[iy]) I - M)``.
"""

import numpy as np
import scipy.linalg

from .backend import HAVE_NUMBA

# Inverse-Lanczos controls.  The iteration cap is the matrix dimension, at
# which point the Krylov space is exhausted and the Ritz value is exact up
# to roundoff; RTOL stops earlier once the value has stagnated.
_LANCZOS_RTOL = 1e-14
# Below this the inverse iterate would overflow; sigma is effectively zero.
_NORM_CAP = 1e140


def _numpy_smin_triangular(u):
    return float(scipy.linalg.svdvals(u)[-1])


def _numpy_grid_triangular(t, xs, ys):
    m = t.shape[0]
    eye = np.eye(m, dtype=np.complex128)
    vals = np.empty((len(ys), len(xs)))
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            vals[iy, ix] = scipy.linalg.svdvals((x + 1j * y) * eye - t)[-1]
    return vals


def _numpy_grid_hessenberg(h, xs, ys):
    p, k = h.shape
    eye = np.eye(p, k, dtype=np.complex128)
    vals = np.empty((len(ys), len(xs)))
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            vals[iy, ix] = scipy.linalg.svdvals((x + 1j * y) * eye - h)[-1]
    return vals


if HAVE_NUMBA:
    import numba
    from numba import njit, prange

    @njit(cache=True)
    def _start_vector(m):
        v = np.empty(m, dtype=np.complex128)
        for i in range(m):
            v[i] = np.cos(1.0 + 2.399963 * i) + 1j * np.sin(0.5 + 1.533 * i)
        return v / np.linalg.norm(v)

    @njit(cache=True)
    def _solve_upper(u, b):
        # x with U x = b, U upper triangular
        m = u.shape[0]
        x = b.copy()
        for i in range(m - 1, -1, -1):
            s = x[i]
            for l in range(i + 1, m):
                s -= u[i, l] * x[l]
            x[i] = s / u[i, i]
        return x

    @njit(cache=True)
    def _solve_upper_conj_t(u, b):
        # x with U^* x = b (forward substitution on the conjugate transpose)
        m = u.shape[0]
        x = b.copy()
        for i in range(m):
            s = x[i]
            for l in range(i):
                s -= np.conj(u[l, i]) * x[l]
            x[i] = s / np.conj(u[i, i])
        return x

    @njit(cache=True)
    def _smin_upper_triangular(u):
        """sigma_min of an upper-triangular matrix via inverse Lanczos.

        Lanczos on B = (U^* U)^{-1} applied through two triangular solves;
        the largest Ritz value theta gives sigma_min = 1/sqrt(theta).
        Full reorthogonalization keeps the cap-iteration result exact.
        """
        m = u.shape[0]
        dmin = abs(u[0, 0])
        for i in range(1, m):
            d = abs(u[i, i])
            if d < dmin:
                dmin = d
        if dmin == 0.0:
            return 0.0
        if m == 1:
            return dmin

        basis = np.zeros((m + 1, m), dtype=np.complex128)
        alphas = np.zeros(m)
        betas = np.zeros(m)
        v = _start_vector(m)
        basis[0] = v
        theta_old = 0.0
        theta = 0.0
        hits = 0
        steps = 0
        for j in range(m):
            w = _solve_upper_conj_t(u, basis[j])
            nw = np.linalg.norm(w)
            if nw > _NORM_CAP:
                return 1.0 / nw
            w = _solve_upper(u, w)
            nw = np.linalg.norm(w)
            if nw > _NORM_CAP:
                # sigma_min(U) <= ||v|| / ||U^-*U^-1 v||^(1/2)-ish; at this
                # magnitude the value is zero for any grid purpose
                return 1.0 / np.sqrt(nw)
            alphas[j] = np.real(np.vdot(basis[j], w))
            # full Gram-Schmidt against the whole basis (covers the
            # alpha/beta recurrence terms), with a second pass when the
            # norm collapses ("twice is enough")
            norm_before = np.linalg.norm(w)
            for i in range(j + 1):
                w -= np.vdot(basis[i], w) * basis[i]
            beta = np.linalg.norm(w)
            if beta < 0.5 * norm_before:
                for i in range(j + 1):
                    w -= np.vdot(basis[i], w) * basis[i]
                beta = np.linalg.norm(w)
            betas[j] = beta
            steps = j + 1

            trid = np.zeros((steps, steps))
            for i in range(steps):
                trid[i, i] = alphas[i]
                if i + 1 < steps:
                    trid[i, i + 1] = betas[i]
                    trid[i + 1, i] = betas[i]
            theta = np.linalg.eigvalsh(trid)[-1]
            if theta <= 0.0:
                theta = 2.2250738585072014e-308
            if j >= 2 and abs(theta - theta_old) <= _LANCZOS_RTOL * theta:
                hits += 1
                if hits >= 2:
                    break
            else:
                hits = 0
            theta_old = theta
            if beta <= 1e-12 * np.sqrt(theta):
                break
            basis[j + 1] = w / beta
        return 1.0 / np.sqrt(theta)

    @njit(cache=True, parallel=True)
    def _numba_grid_triangular(t, xs, ys):
        m = t.shape[0]
        nx = xs.shape[0]
        ny = ys.shape[0]
        vals = np.empty((ny, nx))
        for idx in prange(ny * nx):
            iy = idx // nx
            ix = idx % nx
            z = xs[ix] + 1j * ys[iy]
            u = -t.copy()
            for i in range(m):
                u[i, i] += z
            vals[iy, ix] = _smin_upper_triangular(u)
        return vals

    @njit(cache=True)
    def _hessenberg_to_triangular(a):
        """Givens QR of a (p x k) upper-Hessenberg matrix, p in {k, k+1}.

        Overwrites ``a``; the top k x k block becomes the triangular factor,
        which has the same singular values as the input.
        """
        p, k = a.shape
        for i in range(min(k, p - 1)):
            f = a[i, i]
            g = a[i + 1, i]
            r = np.hypot(abs(f), abs(g))
            if r == 0.0:
                continue
            c = abs(f) / r
            if abs(f) > 0.0:
                s = (f / abs(f)) * np.conj(g) / r
                ph = f / abs(f)
            else:
                s = np.conj(g) / r
                ph = 1.0 + 0j
            for l in range(i, k):
                fi = a[i, l]
                gi = a[i + 1, l]
                a[i, l] = c * fi + s * gi
                a[i + 1, l] = -np.conj(s) * fi + c * gi
            a[i, i] = ph * r  # keep an exact zero below the diagonal
            a[i + 1, i] = 0.0

    @njit(cache=True, parallel=True)
    def _numba_grid_hessenberg(h, xs, ys):
        p, k = h.shape
        nx = xs.shape[0]
        ny = ys.shape[0]
        vals = np.empty((ny, nx))
        for idx in prange(ny * nx):
            iy = idx // nx
            ix = idx % nx
            z = xs[ix] + 1j * ys[iy]
            a = -h.copy()
            for i in range(k):
                a[i, i] += z
            _hessenberg_to_triangular(a)
            vals[iy, ix] = _smin_upper_triangular(a[:k, :k])
        return vals

    def smin_triangular(u):
        return float(_smin_upper_triangular(np.ascontiguousarray(u, dtype=np.complex128)))

    def grid_smin_triangular(t, xs, ys):
        return _numba_grid_triangular(
            np.ascontiguousarray(t, dtype=np.complex128),
            np.ascontiguousarray(xs, dtype=np.float64),
            np.ascontiguousarray(ys, dtype=np.float64),
        )

    def grid_smin_hessenberg(h, xs, ys):
        return _numba_grid_hessenberg(
            np.ascontiguousarray(h, dtype=np.complex128),
            np.ascontiguousarray(xs, dtype=np.float64),
            np.ascontiguousarray(ys, dtype=np.float64),
        )

else:
    smin_triangular = _numpy_smin_triangular
    grid_smin_triangular = _numpy_grid_triangular
    grid_smin_hessenberg = _numpy_grid_hessenberg


# Always-available references for backend-agreement tests and benchmarks.
numpy_grid_smin_triangular = _numpy_grid_triangular
numpy_grid_smin_hessenberg = _numpy_grid_hessenberg
