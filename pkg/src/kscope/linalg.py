"""Dense complex linear algebra: the factorization layer under everything else.

Matrices are plain ``numpy.ndarray`` of dtype complex128 in C (row-major)
order.  ``as_matrix`` is the validating constructor; every public operation
accepts anything array-like and validates once.
"""

import numpy as np
import scipy.linalg

from .errors import NonConvergence, RankDeficient

# Factorization residual, relative SVD accuracy, and numerical-rank cutoffs
# used across the package.
TOL_FACT = 1e-10
TOL_SVD = 1e-12
TOL_SING = 1e-13

# Eigenvalues closer than CLUSTER_REL * ||A|| are flagged as a cluster.
CLUSTER_REL = 1e-8


def as_matrix(a, square=False):
    """Validate and return a complex128, C-contiguous 2-d array.

    Raises ValueError on non-finite entries or (optionally) non-square shape.
    """
    m = np.ascontiguousarray(np.atleast_2d(np.asarray(a)), dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    if square and m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_vector(v):
    """Validate and return a complex128 1-d array."""
    x = np.asarray(v, dtype=np.complex128).ravel()
    if not np.all(np.isfinite(x)):
        raise ValueError("vector entries must be finite")
    return x


def two_norm(m) -> float:
    """Largest singular value of ``m``."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(m)[0])


def smallest_singular_value(m) -> float:
    """Smallest singular value of ``m`` (rows >= cols)."""
    m = as_matrix(m)
    if m.shape[0] < m.shape[1]:
        raise ValueError("smallest_singular_value expects rows >= cols")
    return float(scipy.linalg.svdvals(m)[-1])


def schur_decompose(a):
    """Complex Schur form A = Q T Q* with Q unitary, T upper triangular."""
    a = as_matrix(a, square=True)
    try:
        t, q = scipy.linalg.schur(a, output="complex")
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK cap
        raise NonConvergence("QR iteration in Schur decomposition failed") from exc
    return q, t


def apply_matrix_polynomial(coeffs, a):
    """Evaluate sum_i coeffs[i] * A**i by Horner's rule."""
    a = as_matrix(a, square=True)
    c = as_vector(coeffs)
    n = a.shape[0]
    if c.size == 0:
        return np.zeros_like(a)
    p = c[-1] * np.eye(n, dtype=np.complex128)
    for ck in c[-2::-1]:
        p = p @ a + ck * np.eye(n, dtype=np.complex128)
    return p


def solve_least_squares(m, b):
    """Minimizer of ||Mx - b||_2 via QR; M must have full column rank."""
    m = as_matrix(m)
    b = as_vector(b)
    if m.shape[0] < m.shape[1]:
        raise ValueError("solve_least_squares expects rows >= cols")
    if m.shape[0] != b.size:
        raise ValueError("incompatible shapes")
    q, r = np.linalg.qr(m)
    diag = np.abs(np.diag(r))
    if diag.size and diag.min() < TOL_SING * max(diag.max(), 1e-300):
        raise RankDeficient("matrix is numerically rank deficient")
    return scipy.linalg.solve_triangular(r, q.conj().T @ b)


class SpectralData:
    """Eigenvalues with left/right eigenvectors and their conditioning.

    Attributes
    ----------
    eigenvalues : (n,) complex array from the Schur diagonal.
    right_vectors, left_vectors : (n, n) arrays, unit-norm columns.
    kappa_V : condition number of the right-eigenvector matrix,
        ``inf`` when it is numerically singular (defective matrix).
    kappa_lambda : (n,) per-eigenvalue condition numbers.
    clusters : list of index arrays; eigenvalues closer than
        CLUSTER_REL * ||A|| are grouped.  kappa_lambda is unreliable
        inside any cluster of size > 1.
    """

    def __init__(self, eigenvalues, right_vectors, left_vectors, kappa_V,
                 kappa_lambda, clusters):
        self.eigenvalues = eigenvalues
        self.right_vectors = right_vectors
        self.left_vectors = left_vectors
        self.kappa_V = kappa_V
        self.kappa_lambda = kappa_lambda
        self.clusters = clusters

    @property
    def defective(self) -> bool:
        return not np.isfinite(self.kappa_V)

    @property
    def has_clusters(self) -> bool:
        return any(len(c) > 1 for c in self.clusters)


_RESCALE_AT = 1e120


def _triangular_right_eigvec(t, j, guard):
    """Right null vector of (T - T[j,j] I) with unit trailing component.

    The solve is scale-invariant, so the partial vector is rescaled
    whenever entries grow huge (cascades through repeated eigenvalues).
    """
    lam = t[j, j]
    v = np.zeros(t.shape[0], dtype=np.complex128)
    v[j] = 1.0
    for i in range(j - 1, -1, -1):
        s = t[i, i + 1:j + 1] @ v[i + 1:j + 1]
        d = t[i, i] - lam
        if abs(d) < guard:
            d = guard
        v[i] = -s / d
        m = abs(v[i])
        if m > _RESCALE_AT:
            v[i:j + 1] /= m
    return v


def _triangular_left_eigvec(t, j, guard):
    """Null vector of (T* - conj(T[j,j]) I), forward substitution."""
    n = t.shape[0]
    lam = np.conj(t[j, j])
    u = np.zeros(n, dtype=np.complex128)
    u[j] = 1.0
    for i in range(j + 1, n):
        s = np.conj(t[j:i, i]) @ u[j:i]
        d = np.conj(t[i, i]) - lam
        if abs(d) < guard:
            d = guard
        u[i] = -s / d
        m = abs(u[i])
        if m > _RESCALE_AT:
            u[j:i + 1] /= m
    return u


def eigenvalue_clusters(eigs, scale):
    """Group eigenvalues lying within CLUSTER_REL * scale of each other.

    Connected-component clustering on the link graph; returns a list of
    sorted index arrays covering all eigenvalues.
    """
    n = len(eigs)
    tol = CLUSTER_REL * max(scale, 1e-300)
    order = np.argsort(np.real(eigs), kind="stable")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(n):
        for b in range(a + 1, n):
            i, j = order[a], order[b]
            if np.real(eigs[j]) - np.real(eigs[i]) > tol:
                break
            if abs(eigs[i] - eigs[j]) <= tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [np.array(sorted(g)) for g in sorted(groups.values(), key=min)]


def eigen_full(a) -> SpectralData:
    """Full spectral data from one Schur factorization.

    Eigenvalues are the Schur diagonal; right eigenvectors come from
    back-substitution on T and left ones from T*, all scaled to unit
    2-norm.  kappa_V is computed from the singular values of the
    right-vector matrix and flagged ``inf`` when numerically singular.
    """
    a = as_matrix(a, square=True)
    n = a.shape[0]
    q, t = schur_decompose(a)
    eigs = np.diag(t).copy()
    norm_a = two_norm(a)
    guard = max(np.finfo(float).eps * max(norm_a, 1.0), 1e-300)

    right = np.empty((n, n), dtype=np.complex128)
    left = np.empty((n, n), dtype=np.complex128)
    kappa_lambda = np.empty(n)
    for j in range(n):
        v = q @ _triangular_right_eigvec(t, j, guard)
        w = q @ _triangular_left_eigvec(t, j, guard)
        v /= np.linalg.norm(v)
        w /= np.linalg.norm(w)
        right[:, j] = v
        left[:, j] = w
        overlap = abs(np.vdot(w, v))
        kappa_lambda[j] = 1.0 / overlap if overlap > 0 else np.inf

    sv = scipy.linalg.svdvals(right)
    if sv[-1] < TOL_SING * sv[0]:
        kappa_v = np.inf
    else:
        kappa_v = float(sv[0] / sv[-1])
    clusters = eigenvalue_clusters(eigs, norm_a)
    return SpectralData(eigs, right, left, kappa_v, kappa_lambda, clusters)
