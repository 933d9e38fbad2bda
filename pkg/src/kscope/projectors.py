"""Spectral projectors onto invariant subspaces, their orthonormal bases,
and the compressed matrices used by the localized bounds.

The projector for an eigenvalue group is computed algebraically from an
ordered Schur form: with the group's eigenvalues sorted to the leading
block, P = Q [[I, X], [0, 0]] Q* where T11 X - X T22 = T12.  For a
singleton simple eigenvalue, ||P|| equals the eigenvalue condition number.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ClusterSplit, RepeatedEigenvalues
from .linalg import SpectralData, as_matrix, eigen_full, two_norm
from .polynomials import RootPoly, ShiftedPoly


@dataclass
class SpectralPartition:
    """Disjoint eigenvalue index sets covering the whole spectrum."""

    groups: list

    def validate(self, n):
        seen = np.concatenate([np.asarray(g, dtype=int) for g in self.groups])
        if sorted(seen.tolist()) != list(range(n)):
            raise ValueError("partition must cover all eigenvalue indices exactly once")


def auto_partition(spec: SpectralData, link_distance: float = None, norm_a: float = None
                   ) -> SpectralPartition:
    """Connected-component clustering of the spectrum.

    Eigenvalues closer than ``link_distance`` (default 0.1 * ||A||,
    approximated by the spectral spread when the norm is not supplied)
    land in one group.
    """
    eigs = spec.eigenvalues
    n = len(eigs)
    if link_distance is None:
        scale = norm_a if norm_a is not None else max(np.abs(eigs).max(), 1e-300)
        link_distance = 0.1 * scale
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(eigs[i] - eigs[j]) <= link_distance:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return SpectralPartition([np.array(sorted(g)) for g in sorted(groups.values(), key=min)])


@dataclass
class ProjectorGroup:
    indices: np.ndarray
    eigenvalues: np.ndarray
    projector: np.ndarray
    norm_p: float
    basis: np.ndarray      # n x r, orthonormal columns spanning Ran(P)
    compressed: np.ndarray  # basis* A basis


@dataclass
class ProjectorSet:
    groups: list

    def to_csv(self) -> str:
        lines = ["group,size,norm_Pj"]
        for j, g in enumerate(self.groups):
            lines.append(f"{j},{len(g.indices)},{g.norm_p!r}")
        return "\n".join(lines) + "\n"


def build_projectors(a, partition: SpectralPartition, spec: SpectralData = None
                     ) -> ProjectorSet:
    """Spectral projectors for each group of a partition of sigma(A)."""
    a = as_matrix(a, square=True)
    n = a.shape[0]
    if spec is None:
        spec = eigen_full(a)
    partition.validate(n)
    eigs = spec.eigenvalues

    # a partition must not cut through a flagged eigenvalue cluster
    group_of = np.empty(n, dtype=int)
    for j, g in enumerate(partition.groups):
        group_of[np.asarray(g, dtype=int)] = j
    for cluster in spec.clusters:
        if len(set(group_of[cluster])) > 1:
            raise ClusterSplit(
                f"eigenvalue cluster {eigs[cluster]} is split across groups"
            )

    groups = []
    for g in partition.groups:
        g = np.asarray(g, dtype=int)
        r = len(g)
        if r == n:
            groups.append(ProjectorGroup(
                indices=g, eigenvalues=eigs[g],
                projector=np.eye(n, dtype=np.complex128), norm_p=1.0,
                basis=np.eye(n, dtype=np.complex128), compressed=a.copy(),
            ))
            continue
        targets = eigs[g]

        def in_group(z):
            return np.min(np.abs(eigs - z)) >= np.min(np.abs(targets - z))

        t, q, sdim = scipy.linalg.schur(a, output="complex", sort=in_group)
        if sdim != r:
            raise ClusterSplit(
                f"Schur reordering selected {sdim} eigenvalues for a group of {r}; "
                "group boundaries are too close to an eigenvalue cluster"
            )
        t11, t12, t22 = t[:r, :r], t[:r, r:], t[r:, r:]
        x = scipy.linalg.solve_sylvester(t11, -t22, t12)
        block = np.zeros((n, n), dtype=np.complex128)
        block[:r, :r] = np.eye(r)
        block[:r, r:] = x
        p = q @ block @ q.conj().T
        u = q[:, :r]
        groups.append(ProjectorGroup(
            indices=g, eigenvalues=eigs[g], projector=p,
            norm_p=two_norm(p), basis=u, compressed=u.conj().T @ a @ u,
        ))
    return ProjectorSet(groups)


def _poly_norm_at(poly_or_coeffs, m):
    from .linalg import apply_matrix_polynomial

    if isinstance(poly_or_coeffs, (ShiftedPoly, RootPoly)):
        return two_norm(poly_or_coeffs.at_matrix(m))
    return two_norm(apply_matrix_polynomial(poly_or_coeffs, m))


def theorem_gensp_rhs(pset: ProjectorSet, poly_or_coeffs) -> float:
    """sum_j ||P_j|| * ||p(U_j* A U_j)|| -- an upper bound on ||p(A)||."""
    return float(sum(g.norm_p * _poly_norm_at(poly_or_coeffs, g.compressed)
                     for g in pset.groups))


def ew_condition_sum(spec: SpectralData, poly_or_coeffs) -> float:
    """sum_j kappa(lambda_j) |p(lambda_j)| -- an upper bound on ||p(A)||
    for matrices with simple eigenvalues."""
    if spec.has_clusters or not np.all(np.isfinite(spec.kappa_lambda)):
        raise RepeatedEigenvalues("eigenvalue condition sum needs simple eigenvalues")
    if isinstance(poly_or_coeffs, (ShiftedPoly, RootPoly)):
        vals = poly_or_coeffs(spec.eigenvalues)
    else:
        c = np.asarray(poly_or_coeffs, dtype=np.complex128)
        vals = np.polyval(c[::-1], spec.eigenvalues)
    return float(np.sum(spec.kappa_lambda * np.abs(vals)))
