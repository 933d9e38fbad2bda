"""Test-matrix gallery with closed-form reference data.

Every constructor is deterministic for fixed parameters.  Diagonals
described as "uniformly distributed" are equispaced by default (the
reproducible reading); pass mode="random" with a seed for sampled ones.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import UnknownEntry

DEFAULT_SEED = 20250101


@dataclass
class GalleryEntry:
    name: str
    matrix: np.ndarray
    params: dict
    reference: dict = field(default_factory=dict)


def _uniform_diag(lo, hi, m, mode, seed, inset=False):
    if m <= 0:
        return np.empty(0)
    if mode == "random":
        rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
        return np.sort(rng.uniform(lo, hi, m))
    if inset:
        # keep entries strictly inside (lo, hi); avoids colliding with a
        # defective eigenvalue placed at an endpoint
        return lo + (hi - lo) * (np.arange(1, m + 1) / (m + 1.0))
    if m == 1:
        return np.array([(lo + hi) / 2.0])
    return np.linspace(lo, hi, m)


def toeplitz_interval(a: float = 1.0, b: float = 2.0, n: int = 16) -> GalleryEntry:
    """Tridiagonal Toeplitz finite section of the self-adjoint operator
    with spectrum [a, b]: alpha on the diagonal, beta off."""
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    alpha, beta = (a + b) / 2.0, (b - a) / 4.0
    m = alpha * np.eye(n) + beta * (np.eye(n, k=1) + np.eye(n, k=-1))
    eigs = alpha + 2 * beta * np.cos(np.arange(1, n + 1) * np.pi / (n + 1))
    return GalleryEntry(
        "toeplitz_interval", m.astype(np.complex128),
        {"a": a, "b": b, "n": n},
        {"interval": (a, b), "eigenvalues": np.sort(eigs)},
    )


def example_b(alpha: float = 10.0, b: float = 1.5, n: int = 102,
              mode: str = "equispaced", seed: int = None) -> GalleryEntry:
    """2x2 Jordan block at 1 (coupling alpha) plus a diagonal spread
    over (1, b)."""
    if n < 2:
        raise ValueError("need n >= 2")
    diag = _uniform_diag(1.0, b, n - 2, mode, seed, inset=True)
    m = np.zeros((n, n), dtype=np.complex128)
    m[0, 0] = m[1, 1] = 1.0
    m[0, 1] = alpha
    m[np.arange(2, n), np.arange(2, n)] = diag
    ref = {
        "psa_disk_radius": "sqrt(alpha*eps + eps^2) around 1 (Jordan part)",
        "origin_eps_threshold": 0.5 * (math.sqrt(alpha ** 2 + 4) - alpha),
        "gmres_cap_rate": (math.sqrt(b) - 1) / (math.sqrt(b) + 1),
        "gmres_cap_factor": 2.0 * abs(1 - b) ** 2,
    }
    if b <= alpha / 2.0:
        ref["fov_disk"] = (1.0, alpha / 2.0)
    return GalleryEntry("example_b", m, {"alpha": alpha, "b": b, "n": n}, ref)


def example_c(delta: float = 0.01, a: float = 1.0, b: float = 2.0, n: int = 64,
              mode: str = "equispaced", seed: int = None) -> GalleryEntry:
    """One outlier eigenvalue delta plus a diagonal spread over [a, b]."""
    diag = _uniform_diag(a, b, n - 1, mode, seed)
    m = np.diag(np.concatenate([[delta], diag])).astype(np.complex128)
    rho = (math.sqrt(b / a) - 1) / (math.sqrt(b / a) + 1)
    ref = {"interval": (a, b), "delta": delta, "rho_interval": rho}
    if 0 < abs(delta) < a:
        ref["stagnation_iterations"] = math.ceil(
            1 + (math.log(abs(delta)) - math.log(2 * (b - delta))) / math.log(rho))
    return GalleryEntry("example_c", m, {"delta": delta, "a": a, "b": b, "n": n}, ref)


def example_d(delta: float = 0.5, n: int = 32) -> GalleryEntry:
    """Jordan block at 1 with constant superdiagonal delta."""
    m = np.eye(n, dtype=np.complex128) + delta * np.eye(n, k=1)
    return GalleryEntry(
        "example_d", m, {"delta": delta, "n": n},
        {"fov_disk": (1.0, delta * math.cos(math.pi / (n + 1)))},
    )


def ipsen_residual(delta: float, k: int) -> float:
    """Exact GMRES relative residual for example_d started from e_n."""
    if delta == 0:
        return 0.0 if k >= 1 else 1.0
    return float(delta ** k * math.sqrt((1 - delta ** 2) / (1 - delta ** (2 * (k + 1)))))


def example_e_matrices(delta: float = 1e-8, n: int = 64,
                       mode: str = "equispaced", seed: int = None):
    """The two stagnation examples: diag(1, -1), and the uniformly
    ill-conditioned similarity with triangular eigenvector matrix."""
    first = GalleryEntry("example_e_indefinite",
                         np.diag([1.0, -1.0]).astype(np.complex128),
                         {}, {"spectrum": (1.0, -1.0)})
    lam = _uniform_diag(1.0, 2.0, n, mode, seed)
    v = np.zeros((n, n), dtype=np.complex128)
    v[0, 0] = 1.0
    v[0, 1:] = math.sqrt(max(1.0 - delta, 0.0))
    v[np.arange(1, n), np.arange(1, n)] = math.sqrt(delta)
    a = v @ np.diag(lam) @ np.linalg.inv(v)
    ref = {"eigenvalue_interval": (1.0, 2.0)}
    if delta < 1:
        ref["kappa_lower"] = (1 + math.sqrt(delta)) / math.sqrt(delta)
    second = GalleryEntry("example_e_fold", a, {"delta": delta, "n": n}, ref)
    return first, second


def integration_matrix(beta: float = 2.5, n: int = 64) -> GalleryEntry:
    """Jordan-like matrix with superdiagonal beta/j (an "integration
    matrix"); its field of values and pseudospectra are disks about 1."""
    m = np.eye(n, dtype=np.complex128)
    j = np.arange(1, n)
    m[j - 1, j] = beta / j
    return GalleryEntry(
        "integration", m, {"beta": beta, "n": n},
        {"fov_psa_disks_about": 1.0,
         "jordan_kappa_lower": math.factorial(n - 1) / beta ** (n - 1)
         if n <= 20 else float("inf")},
    )


def jordan_factors(beta: float, n: int):
    """X, J with X J X^{-1} equal to integration_matrix(beta, n):
    X = diag((j-1)!/beta^(j-1)), J the unit-superdiagonal Jordan block."""
    d = np.array([math.factorial(j) / beta ** j for j in range(n)])
    x = np.diag(d).astype(np.complex128)
    jm = np.eye(n, dtype=np.complex128) + np.eye(n, k=1, dtype=np.complex128)
    return x, jm


def cg_pair_matrix(n: int = 64) -> GalleryEntry:
    """Direct sum of two bidiagonal halves with spectra {-1} and {+1} and
    superdiagonals 1/4 and 1/2."""
    if n % 2:
        raise ValueError("n must be even")
    h = n // 2
    m1 = -np.eye(h, dtype=np.complex128) + 0.25 * np.eye(h, k=1)
    m2 = np.eye(h, dtype=np.complex128) + 0.5 * np.eye(h, k=1)
    m = scipy.linalg.block_diag(m1, m2)
    return GalleryEntry("cg_pair", m, {"n": n}, {"spectrum": (-1.0, 1.0)})


def _fem_1d(n: int, h: float):
    """1-d linear-element matrices on n interior nodes, spacing h:
    mass, stiffness, and convection (antisymmetric)."""
    mass = h / 6.0 * (4 * np.eye(n) + np.eye(n, k=1) + np.eye(n, k=-1))
    stiff = (2 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)) / h
    conv = 0.5 * (np.eye(n, k=1) - np.eye(n, k=-1))
    return mass, stiff, conv


def _supg_pieces(n_per_side: int, nu: float, upwind):
    h = 1.0 / (n_per_side + 1)
    if upwind == "auto":
        peclet = h / (2.0 * nu)  # unit wind speed
        delta = (h / 2.0) * (1.0 - 1.0 / peclet) if peclet > 1 else 0.0
    else:
        delta = float(upwind)
    mass, stiff, conv = _fem_1d(n_per_side, h)
    t_y = (nu + delta) * stiff + conv
    return h, delta, mass, stiff, t_y


def supg_matrix(n_per_side: int = 13, nu: float = 0.01, upwind="auto") -> GalleryEntry:
    """Streamline-upwind Petrov-Galerkin discretization of
    -nu Laplace(u) + u_y on the unit square.

    Bilinear elements on a uniform grid with n_per_side interior unknowns
    per direction (Dirichlet boundary eliminated), vertical wind [0, 1],
    mass terms lumped.  With the lumped tensor structure
    A = h T_y (x) I + h I (x) nu K_x,  T_y = (nu + delta) K_y + C_y,
    the eigenvalues fall exactly on n_per_side vertical lines in the
    complex plane, n_per_side per line (see supg_line_eigenvalues; the
    assembled matrix is far too nonnormal for a dense eigensolver to
    reproduce them).  The Hermitian part is positive definite, so the
    field of values stays in the open right half-plane.

    upwind="auto" uses the streamline-diffusion parameter
    delta = (h/2)(1 - 1/P_h) with mesh Peclet P_h = h/(2 nu) (zero when
    P_h <= 1); pass a number to override.
    """
    if n_per_side < 3:
        raise ValueError("need at least 3 unknowns per side")
    h, delta, _, stiff, t_y = _supg_pieces(n_per_side, nu, upwind)
    eye = np.eye(n_per_side)
    a = np.kron(t_y, h * eye) + np.kron(h * eye, nu * stiff)
    lines = supg_line_eigenvalues(n_per_side, nu, upwind)
    return GalleryEntry(
        "supg", a.astype(np.complex128),
        {"n_per_side": n_per_side, "nu": nu, "upwind": delta},
        {"coercive": True, "eigenvalue_lines": n_per_side,
         "line_real_parts": np.sort(np.array([l.real.mean() for l in lines])),
         "rho_fov_reference": 0.968},
    )


def supg_line_eigenvalues(n_per_side: int, nu: float = 0.01, upwind="auto"):
    """Exact eigenvalues of supg_matrix, one array per vertical line.

    For each eigenvalue kappa_j of the 1-d stiffness matrix, the line is
    the spectrum of the small tridiagonal Toeplitz h T_y + h nu kappa_j I,
    whose off-diagonal product is negative: constant real part.
    """
    h, _, _, stiff, t_y = _supg_pieces(n_per_side, nu, upwind)
    kx = np.sort(scipy.linalg.eigvalsh(stiff))
    return [scipy.linalg.eigvals(h * t_y + h * nu * k * np.eye(n_per_side))
            for k in kx]


# ---------------------------------------------------------------------------
# registry for the CLI

_REGISTRY = {
    "toeplitz_interval": (toeplitz_interval, {"a": 1.0, "b": 2.0, "n": 16}),
    "example_b": (example_b, {"alpha": 10.0, "b": 1.5, "n": 102}),
    "example_c": (example_c, {"delta": 0.01, "a": 1.0, "b": 2.0, "n": 64}),
    "example_d": (example_d, {"delta": 0.5, "n": 32}),
    "integration": (integration_matrix, {"beta": 2.5, "n": 64}),
    "cg_pair": (cg_pair_matrix, {"n": 64}),
    "supg": (supg_matrix, {"n_per_side": 13, "nu": 0.01}),
}


def gallery_names():
    return sorted(_REGISTRY) + ["example_e_indefinite", "example_e_fold"]


def build(name: str, **params) -> GalleryEntry:
    if name == "example_e_indefinite":
        return example_e_matrices(**params)[0]
    if name == "example_e_fold":
        return example_e_matrices(**params)[1]
    if name not in _REGISTRY:
        raise UnknownEntry(f"unknown gallery entry {name!r}; "
                           f"known: {', '.join(gallery_names())}")
    fn, defaults = _REGISTRY[name]
    merged = dict(defaults)
    merged.update(params)
    return fn(**merged)
