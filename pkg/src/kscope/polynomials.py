"""Residual polynomials: degree-k polynomials normalized to p(0) = 1.

Two representations, both evaluated without expanding into raw monomials
(which is badly conditioned for shifted point sets):

* ``ShiftedPoly``: p(z) = 1 + sum_i a_i (w^i - w0^i), w = (z-c)/s,
  w0 = -c/s.  By construction p(0) = 1 exactly, whatever the a_i.
* ``RootPoly``: p(z) = prod_j (1 - z/r_j), the factored form produced by
  GMRES residual-polynomial roots.
"""

import numpy as np

from .linalg import as_matrix


class ShiftedPoly:
    """p(z) = 1 + sum a_i * (((z-c)/s)^i - ((-c)/s)^i)."""

    def __init__(self, center, scale, coeffs):
        self.center = complex(center)
        self.scale = float(scale) if scale else 1.0
        self.coeffs = np.asarray(coeffs, dtype=np.complex128)

    @property
    def degree(self):
        return len(self.coeffs)

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        w = (z - self.center) / self.scale
        w0 = (-self.center) / self.scale
        out = np.ones_like(w)
        wp = np.ones_like(w)
        w0p = 1.0 + 0j
        for a in self.coeffs:
            wp = wp * w
            w0p = w0p * w0
            out = out + a * (wp - w0p)
        return out

    def at_matrix(self, a):
        a = as_matrix(a, square=True)
        n = a.shape[0]
        eye = np.eye(n, dtype=np.complex128)
        w = (a - self.center * eye) / self.scale
        w0 = (-self.center) / self.scale
        out = eye.copy()
        wp = eye.copy()
        w0p = 1.0 + 0j
        for c in self.coeffs:
            wp = wp @ w
            w0p = w0p * w0
            out = out + c * (wp - w0p * eye)
        return out

    def monomial_coeffs(self):
        """Expand to c_0..c_k with c_0 = 1; only safe for small degrees."""
        k = self.degree
        out = np.zeros(k + 1, dtype=np.complex128)
        out[0] = 1.0
        # ((z-c)/s)^i  expanded by repeated multiplication with (z-c)/s
        basis = np.zeros(k + 1, dtype=np.complex128)
        basis[0] = 1.0
        w0p = 1.0 + 0j
        w0 = (-self.center) / self.scale
        for i, a in enumerate(self.coeffs, start=1):
            nxt = np.zeros(k + 1, dtype=np.complex128)
            nxt[1:i + 1] += basis[:i] / self.scale
            nxt[:i] += basis[:i] * (-self.center / self.scale)
            basis = nxt
            w0p = w0p * w0
            out += a * basis
            out[0] -= a * w0p
        return out


class RootPoly:
    """p(z) = prod_j (1 - z / roots[j]); p(0) = 1 exactly."""

    def __init__(self, roots):
        r = np.asarray(roots, dtype=np.complex128).ravel()
        if np.any(r == 0):
            raise ValueError("RootPoly roots must be nonzero (p(0) = 1)")
        self.roots = r

    @property
    def degree(self):
        return len(self.roots)

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.ones_like(z)
        for r in self.roots:
            out = out * (1.0 - z / r)
        return out

    def at_matrix(self, a):
        a = as_matrix(a, square=True)
        n = a.shape[0]
        out = np.eye(n, dtype=np.complex128)
        for r in self.roots:
            out = out @ (np.eye(n, dtype=np.complex128) - a / r)
        return out

    def monomial_coeffs(self):
        out = np.array([1.0 + 0j])
        for r in self.roots:
            nxt = np.zeros(len(out) + 1, dtype=np.complex128)
            nxt[:-1] += out
            nxt[1:] -= out / r
            out = nxt
        return out


ONE = ShiftedPoly(0.0, 1.0, [])  # p(z) = 1


def chebyshev_residual(a, b, k):
    """Optimal p(0)=1 polynomial on the real interval [a, b], 0 < a < b.

    Scaled-and-shifted Chebyshev: p(z) = T_k((2z-b-a)/(b-a)) / T_k(-(b+a)/(b-a)),
    returned in factored form through its roots.
    """
    if k == 0:
        return ONE
    j = np.arange(1, k + 1)
    nodes = np.cos((2 * j - 1) * np.pi / (2 * k))
    roots = (b + a) / 2.0 + (b - a) / 2.0 * nodes
    return RootPoly(roots)
