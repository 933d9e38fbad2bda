"""Spectral sets: field of values, pseudospectra grids, level-set contours,
and the Crouzeix-Greenbaum region.

Only boundaries are ever stored: every bound takes the maximum of an
analytic function over a region, which by the maximum-modulus principle
is attained on the boundary.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import kernels
from .errors import LevelTouchesBoundary, SingularMatrix
from .linalg import TOL_SING, as_matrix, schur_decompose, two_norm


# ---------------------------------------------------------------------------
# field of values


@dataclass
class FovBoundary:
    """Convex polygon approximating the boundary of the field of values.

    vertices: hull vertices, counterclockwise, not closed.
    support_points: the raw boundary points, one per rotation angle.
    """

    vertices: np.ndarray
    support_points: np.ndarray
    numerical_radius: float
    min_real_part: float

    def closed(self):
        v = self.vertices
        if len(v) == 0:
            return v
        return np.append(v, v[0])

    def bounding_box(self):
        p = self.support_points
        return (p.real.min(), p.real.max(), p.imag.min(), p.imag.max())

    def contains(self, z, slack=0.0):
        """Point membership in the hull (degenerate hulls use distance)."""
        return polygon_signed_distance(self.vertices, np.asarray(z)) <= slack


def _convex_hull(points):
    """Andrew's monotone chain; collinear points dropped.

    Returns counterclockwise vertices.  Degenerate inputs give back one
    or two points (a point / segment "polygon").
    """
    pts = np.unique(np.round(points.astype(np.complex128), 14))
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a - o).real * (b - o).imag - (a - o).imag * (b - o).real

    scale = max(np.abs(pts).max(), 1e-300)
    tol = 1e-12 * scale * scale
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    hull = np.array(lower[:-1] + upper[:-1])
    if len(hull) <= 2:
        return hull[:max(len(hull), 1)]
    return hull


def fov_boundary(a, m: int = 256) -> FovBoundary:
    """Field-of-values boundary by the rotation method.

    For each angle theta, the largest eigenvector u of the Hermitian part
    of e^{i theta} A supports W(A); the boundary point is u*Au.
    """
    a = as_matrix(a, square=True)
    if m < 8:
        raise ValueError("need at least 8 rotation angles")
    n = a.shape[0]
    ah = a.conj().T
    points = np.empty(m, dtype=np.complex128)
    for i, th in enumerate(2.0 * np.pi * np.arange(m) / m):
        h = (np.exp(1j * th) * a + np.exp(-1j * th) * ah) / 2.0
        w, v = scipy.linalg.eigh(h, subset_by_index=[n - 1, n - 1])
        u = v[:, 0]
        points[i] = np.vdot(u, a @ u) / np.vdot(u, u).real
    herm = (a + ah) / 2.0
    min_re = float(scipy.linalg.eigh(herm, eigvals_only=True, subset_by_index=[0, 0])[0])
    hull = _convex_hull(points)
    return FovBoundary(
        vertices=hull,
        support_points=points,
        numerical_radius=float(np.abs(points).max()),
        min_real_part=min_re,
    )


def polygon_signed_distance(vertices, z):
    """Signed distance surrogate to a convex CCW polygon: <= 0 inside.

    Maximum of the supporting half-plane signed distances.  Exact inside
    and near edges; underestimates outside near corners, but the sign is
    correct everywhere, which is all level-set extraction needs.
    Degenerate polygons (1-2 vertices) fall back to true distance.
    """
    z = np.asarray(z, dtype=np.complex128)
    v = np.asarray(vertices, dtype=np.complex128)
    if len(v) == 0:
        return np.full(z.shape, np.inf)
    if len(v) == 1:
        return np.abs(z - v[0])
    if len(v) == 2:
        return _segment_distance(v[0], v[1], z)
    out = np.full(z.shape, -np.inf)
    for i in range(len(v)):
        a_, b_ = v[i], v[(i + 1) % len(v)]
        e = b_ - a_
        le = abs(e)
        if le == 0:
            continue
        # -cross(e, z-a)/|e|: negative on the left of a CCW edge (inside)
        d = ((z - a_).real * e.imag - (z - a_).imag * e.real) / le
        out = np.maximum(out, d)
    return out


def _segment_distance(a_, b_, z):
    e = b_ - a_
    t = np.clip(((z - a_) * np.conj(e)).real / max(abs(e) ** 2, 1e-300), 0.0, 1.0)
    return np.abs(z - (a_ + t * e))


def polygon_distance(vertices, z):
    """True Euclidean distance from points z to a convex CCW polygon
    (0 inside)."""
    z = np.asarray(z, dtype=np.complex128)
    v = np.asarray(vertices, dtype=np.complex128)
    if len(v) == 0:
        return np.full(z.shape, np.inf)
    if len(v) == 1:
        return np.abs(z - v[0])
    edge_d = np.full(z.shape, np.inf)
    for i in range(len(v)):
        a_, b_ = v[i], v[(i + 1) % len(v)]
        edge_d = np.minimum(edge_d, _segment_distance(a_, b_, z))
    if len(v) == 2:
        return edge_d
    inside = polygon_signed_distance(v, z) <= 0
    return np.where(inside, 0.0, edge_d)


def sample_polyline(closed_vertices, n):
    """n points spread uniformly by arclength along a closed polyline."""
    v = np.asarray(closed_vertices, dtype=np.complex128)
    if len(v) < 2:
        return np.full(max(n, 1), v[0] if len(v) else 0.0, dtype=np.complex128)
    seg = np.abs(np.diff(v))
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    if total == 0:
        return np.full(n, v[0])
    s = np.linspace(0.0, total, n, endpoint=False)
    idx = np.searchsorted(cum, s, side="right") - 1
    idx = np.clip(idx, 0, len(seg) - 1)
    t = (s - cum[idx]) / np.where(seg[idx] > 0, seg[idx], 1.0)
    return v[idx] + t * (v[idx + 1] - v[idx])


# ---------------------------------------------------------------------------
# pseudospectra grids


@dataclass
class RegionGrid:
    """Values of sigma_min(z I - M) on a uniform rectangular grid."""

    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray  # shape (len(ys), len(xs))

    @property
    def box(self):
        return (float(self.xs[0]), float(self.xs[-1]), float(self.ys[0]), float(self.ys[-1]))

    @property
    def spacing(self):
        return (float(self.xs[1] - self.xs[0]), float(self.ys[1] - self.ys[0]))

    def nodes(self):
        return self.xs[None, :] + 1j * self.ys[:, None]


def auto_box(a, inflate=1.5):
    """Grid box from the field-of-values bounding box.

    sigma_eps(A) sits inside W(A) + disk(eps), so inflating the W(A) box
    covers every level set of interest at desk scale.
    """
    fov = fov_boundary(a, m=64)
    re_min, re_max, im_min, im_max = fov.bounding_box()
    cx, cy = (re_min + re_max) / 2.0, (im_min + im_max) / 2.0
    diam = max(re_max - re_min, im_max - im_min)
    floor = max(0.25 * max(diam, fov.numerical_radius), 1e-8)
    hx = max(inflate * (re_max - re_min) / 2.0, floor)
    hy = max(inflate * (im_max - im_min) / 2.0, floor)
    return (cx - hx, cx + hx, cy - hy, cy + hy)


def _grid_axes(box, nx, ny):
    re_min, re_max, im_min, im_max = box
    if not (re_min < re_max and im_min < im_max) or nx < 2 or ny < 2:
        raise ValueError("grid box must be nondegenerate with nx, ny >= 2")
    return np.linspace(re_min, re_max, nx), np.linspace(im_min, im_max, ny)


def pseudospectrum_grid(a, box=None, nx: int = 200, ny: int = 200) -> RegionGrid:
    """sigma_min(z I - A) at every node of a uniform grid.

    A is reduced once to Schur form; the kernel sweeps the shifted
    triangular factor, which has the same singular values.
    """
    a = as_matrix(a, square=True)
    if box is None:
        box = auto_box(a)
    xs, ys = _grid_axes(box, nx, ny)
    _, t = schur_decompose(a)
    values = kernels.grid_smin_triangular(t, xs, ys)
    return RegionGrid(xs=xs, ys=ys, values=values)


def pseudospectrum_grid_rect(h_tilde, box, nx: int = 200, ny: int = 200) -> RegionGrid:
    """sigma_min(z I_tilde - H~) on a grid, for (k+1) x k Hessenberg H~.

    I_tilde is the k x k identity with an appended zero row.  Square
    Hessenberg input is accepted too (plain shifted sigma_min).
    """
    h = as_matrix(h_tilde)
    p, k = h.shape
    if p not in (k, k + 1):
        raise ValueError("expected a k x k or (k+1) x k Hessenberg matrix")
    xs, ys = _grid_axes(box, nx, ny)
    values = kernels.grid_smin_hessenberg(h, xs, ys)
    return RegionGrid(xs=xs, ys=ys, values=values)


# ---------------------------------------------------------------------------
# marching-squares contour extraction


@dataclass
class Contour:
    """Closed isolines of a grid at one epsilon level."""

    epsilon: float
    loops: list  # list of complex arrays, first vertex == last vertex
    length: float
    encloses_origin: bool
    touches_boundary: bool = False
    windings: list = field(default_factory=list)

    def all_vertices(self):
        if not self.loops:
            return np.empty(0, dtype=np.complex128)
        return np.concatenate([lp[:-1] for lp in self.loops])

    def sample(self, n):
        """n arclength-uniform samples distributed across the loops."""
        if not self.loops:
            return np.empty(0, dtype=np.complex128)
        lens = np.array([_polyline_length(lp) for lp in self.loops])
        total = lens.sum()
        out = []
        for lp, le in zip(self.loops, lens):
            ni = max(int(round(n * le / total)) if total > 0 else n, 8)
            out.append(sample_polyline(lp, ni))
        return np.concatenate(out)


def _polyline_length(v):
    return float(np.abs(np.diff(v)).sum())


def winding_number(loop, z0=0.0):
    """Winding number of a closed polyline around z0 (0 if z0 on the path)."""
    w = np.asarray(loop, dtype=np.complex128) - z0
    if np.any(np.abs(w) < 1e-300):
        return 0
    ang = np.angle(w[1:] * np.conj(w[:-1]))
    return int(round(-ang.sum() / (2.0 * np.pi)))


def _marching_squares(values, xs, ys, level):
    """Isolines of ``values`` at ``level`` with linear edge interpolation.

    The grid is padded with a huge ghost border so every sublevel region
    closes; crossings on ghost edges hug the box boundary (the level set
    was clipped) and set the touches flag.  Saddle cells are resolved by
    the cell-center (4-corner mean) sample.  Returns (loops, touched).
    """
    ny, nx = values.shape
    vbig = (abs(level) + np.abs(values).max() + 1.0) * 1e12
    vals = np.full((ny + 2, nx + 2), vbig)
    vals[1:-1, 1:-1] = values
    hx = xs[1] - xs[0]
    hy = ys[1] - ys[0]
    gx = np.concatenate([[xs[0] - hx], xs, [xs[-1] + hx]])
    gy = np.concatenate([[ys[0] - hy], ys, [ys[-1] + hy]])

    inside = vals < level

    def edge_point(key):
        kind, iy, ix = key
        v0 = vals[iy, ix]
        if kind == "h":
            v1 = vals[iy, ix + 1]
            t = (level - v0) / (v1 - v0)
            return (gx[ix] + t * (gx[ix + 1] - gx[ix])) + 1j * gy[iy]
        v1 = vals[iy + 1, ix]
        t = (level - v0) / (v1 - v0)
        return gx[ix] + 1j * (gy[iy] + t * (gy[iy + 1] - gy[iy]))

    # per-cell segments as pairs of edge keys
    segments = []
    touched = False
    for iy in range(ny + 1):
        for ix in range(nx + 1):
            c = (
                int(inside[iy, ix])
                | (int(inside[iy, ix + 1]) << 1)
                | (int(inside[iy + 1, ix + 1]) << 2)
                | (int(inside[iy + 1, ix]) << 3)
            )
            if c == 0 or c == 15:
                continue
            top = ("h", iy, ix)
            bottom = ("h", iy + 1, ix)
            left = ("v", iy, ix)
            right = ("v", iy, ix + 1)
            if c in (1, 14):
                segs = [(left, top)]
            elif c in (2, 13):
                segs = [(top, right)]
            elif c in (4, 11):
                segs = [(right, bottom)]
            elif c in (8, 7):
                segs = [(bottom, left)]
            elif c in (3, 12):
                segs = [(left, right)]
            elif c in (6, 9):
                segs = [(top, bottom)]
            elif c in (5, 10):
                center_in = (
                    vals[iy, ix] + vals[iy, ix + 1] + vals[iy + 1, ix] + vals[iy + 1, ix + 1]
                ) / 4.0 < level
                joined = (c == 5) == center_in
                if joined:
                    segs = [(left, top), (right, bottom)] if c == 5 else [(top, right), (bottom, left)]
                else:
                    segs = [(left, bottom), (top, right)] if c == 5 else [(left, top), (right, bottom)]
            segments.extend(segs)
            if iy in (0, ny) or ix in (0, nx):
                touched = True

    # stitch segments into loops by matching shared edge keys
    incident = {}
    for si, (k1, k2) in enumerate(segments):
        incident.setdefault(k1, []).append(si)
        incident.setdefault(k2, []).append(si)
    used = [False] * len(segments)
    loops = []
    for start in range(len(segments)):
        if used[start]:
            continue
        keys = [segments[start][0], segments[start][1]]
        used[start] = True
        while True:
            cur = keys[-1]
            nxt = None
            for si in incident[cur]:
                if not used[si]:
                    nxt = si
                    break
            if nxt is None:
                break
            used[nxt] = True
            k1, k2 = segments[nxt]
            keys.append(k2 if k1 == cur else k1)
        if keys[0] == keys[-1] and len(keys) >= 4:
            loops.append(np.array([edge_point(k) for k in keys]))
    return loops, touched


def extract_contour(grid: RegionGrid, eps: float) -> Contour:
    """Marching-squares boundary of {z : grid value < eps}."""
    vmin, vmax = grid.values.min(), grid.values.max()
    if not (vmin < eps < vmax):
        raise ValueError(
            f"eps={eps:g} must lie strictly between grid min {vmin:g} and max {vmax:g}"
        )
    loops, touched = _marching_squares(grid.values, grid.xs, grid.ys, eps)
    if touched:
        warnings.warn(
            "level set touches the grid box; contour length is a lower estimate",
            LevelTouchesBoundary,
        )
    windings = [winding_number(lp) for lp in loops]
    return Contour(
        epsilon=float(eps),
        loops=loops,
        length=float(sum(_polyline_length(lp) for lp in loops)),
        encloses_origin=any(w != 0 for w in windings) or _on_any_loop(loops),
        touches_boundary=touched,
        windings=windings,
    )


def _on_any_loop(loops):
    return any(np.any(np.abs(lp) < 1e-300) for lp in loops)


def grid_to_csv(grid: RegionGrid) -> str:
    lines = ["re,im,smin"]
    for iy, y in enumerate(grid.ys):
        for ix, x in enumerate(grid.xs):
            lines.append(f"{x!r},{y!r},{grid.values[iy, ix]!r}")
    return "\n".join(lines) + "\n"


def contour_to_json(contour: Contour) -> dict:
    return {
        "epsilon": contour.epsilon,
        "length": contour.length,
        "encloses_origin": bool(contour.encloses_origin),
        "touches_boundary": bool(contour.touches_boundary),
        "loops": [
            {"re": lp.real.tolist(), "im": lp.imag.tolist()} for lp in contour.loops
        ],
    }


def circle_contour(center, radius, eps, n=512):
    """Analytic circular contour (used for closed-form pseudospectral disks)."""
    th = np.linspace(0.0, 2.0 * np.pi, n + 1)
    loop = center + radius * np.exp(1j * th)
    loop[-1] = loop[0]
    return Contour(
        epsilon=float(eps),
        loops=[loop],
        length=float(2.0 * np.pi * radius),
        encloses_origin=abs(center) < radius,
        windings=[1],
    )


# ---------------------------------------------------------------------------
# Crouzeix-Greenbaum region


def cg_region(a, fov: FovBoundary = None, resolution: int = 400) -> Contour:
    """Boundary of W(A) with the disk of radius 1/mu(A^{-1}) carved out.

    encloses_origin reports whether the region *surrounds* the origin
    (some boundary loop winds around it), in which case the polynomial
    problem on the region is identically 1.
    """
    a = as_matrix(a, square=True)
    sv = scipy.linalg.svdvals(a)
    if sv[-1] < TOL_SING * sv[0]:
        raise SingularMatrix("cg_region needs a nonsingular matrix")
    if fov is None:
        fov = fov_boundary(a)
    ainv = scipy.linalg.inv(a)
    r = 1.0 / fov_boundary(ainv).numerical_radius

    verts = fov.vertices
    if len(verts) <= 2:
        # degenerate field of values (point or segment): keep |z| >= r
        pts = verts if len(verts) < 2 else sample_polyline(np.append(verts, verts[0]), 256)
        keep = pts[np.abs(pts) >= r - 1e-15]
        if len(keep) == 0:
            loops = []
        elif len(keep) == 1:
            loops = [np.array([keep[0], keep[0]])]
        else:
            loops = [np.concatenate([keep, keep[-2::-1]])]
        return Contour(epsilon=0.0, loops=loops,
                       length=sum(_polyline_length(lp) for lp in loops),
                       encloses_origin=False, windings=[0] * len(loops))

    re_min, re_max, im_min, im_max = fov.bounding_box()
    pad = 0.05 * max(re_max - re_min, im_max - im_min, 1e-8)
    xs = np.linspace(re_min - pad, re_max + pad, resolution)
    ys = np.linspace(im_min - pad, im_max + pad, resolution)
    zz = xs[None, :] + 1j * ys[:, None]
    f = np.maximum(polygon_signed_distance(verts, zz), r - np.abs(zz))
    loops, touched = _marching_squares(f, xs, ys, 0.0)
    windings = [winding_number(lp) for lp in loops]
    return Contour(
        epsilon=0.0,
        loops=loops,
        length=float(sum(_polyline_length(lp) for lp in loops)),
        encloses_origin=any(w != 0 for w in windings),
        touches_boundary=touched,
        windings=windings,
    )
