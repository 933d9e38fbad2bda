"""Command-line front end: build gallery matrices, compute spectral sets,
evaluate bound curves and adaptive estimates, and run the acceptance suite.

Outputs are CSV/JSON files (the contract format) plus optional SVG plots
rendered directly (log-scale convergence curves, set-boundary overlays).
Exit codes: 0 ok, 1 usage, 2 numerical failure, 3 verification failure.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import acceptance, bounds, gallery, krylov, matio, projectors, sets
from .errors import KscopeError
from .linalg import eigen_full, smallest_singular_value, two_norm

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# SVG rendering (hand-rolled: polylines plus a log-scale axis mapping)

_COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
           "#7f7f7f", "#bcbd22", "#17becf", "#ff7f0e"]


def _svg_document(width, height, body):
    return (
        f'<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        + body + "</svg>\n"
    )


def _polyline(points, color, width=1.2, dash=None):
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    d = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polyline fill="none" stroke="{color}" stroke-width="{width}"'
            f'{d} points="{pts}"/>\n')


def _text(x, y, s, size=11, color="#000", anchor="start"):
    s = s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    return (f'<text x="{x:.1f}" y="{y:.1f}" font-size="{size}" fill="{color}" '
            f'font-family="sans-serif" text-anchor="{anchor}">{s}</text>\n')


def svg_convergence(path, curves, runs=(), sandwich=None, marker=None,
                    title="", floor=1e-16):
    """Log-scale convergence plot: bound curves, GMRES runs, sandwich band."""
    w, h = 640, 460
    ml, mr, mt, mb = 60, 150, 30, 40
    kmax = max([c.kmax for c in curves] + [len(r) - 1 for r in runs] + [1])
    vals = [v for c in curves for v in c.values if v > 0]
    vals += [v for r in runs for v in r if v > 0]
    if sandwich is not None:
        vals += [v for v in sandwich.upper if v > 0]
    top = max(max(vals, default=1.0), 1.0)
    bot = max(min(vals, default=floor), floor)
    ly_top, ly_bot = np.log10(top), np.log10(bot)
    if ly_top - ly_bot < 1:
        ly_bot = ly_top - 1

    def xm(k):
        return ml + (w - ml - mr) * k / kmax

    def ym(v):
        lv = np.log10(max(v, floor))
        return mt + (h - mt - mb) * (ly_top - lv) / (ly_top - ly_bot)

    body = _text(w / 2, 18, title, 13, anchor="middle")
    # axes
    body += _polyline([(ml, mt), (ml, h - mb), (w - mr, h - mb)], "#000", 1.0)
    for d in range(int(np.floor(ly_bot)), int(np.ceil(ly_top)) + 1):
        if ly_bot <= d <= ly_top:
            y = ym(10.0 ** d)
            body += _polyline([(ml - 4, y), (ml, y)], "#000", 1.0)
            body += _text(ml - 8, y + 4, f"1e{d}", 9, anchor="end")
    step = max(1, kmax // 10)
    for k in range(0, kmax + 1, step):
        x = xm(k)
        body += _polyline([(x, h - mb), (x, h - mb + 4)], "#000", 1.0)
        body += _text(x, h - mb + 16, str(k), 9, anchor="middle")
    body += _text((ml + w - mr) / 2, h - 8, "iteration k", 11, anchor="middle")

    legend_y = mt + 10
    for i, c in enumerate(curves):
        color = _COLORS[i % len(_COLORS)]
        dash = "4,3" if not c.applicable else None
        pts = [(xm(k), ym(v)) for k, v in enumerate(c.values)]
        body += _polyline(pts, color, 1.4, dash=dash)
        label = c.kind + (f" eps={c.epsilon:g}" if c.epsilon is not None else "")
        if c.estimate:
            label += " (est)"
        if not c.applicable:
            label += " [n/a]"
        body += _text(w - mr + 8, legend_y, label, 10, color)
        legend_y += 14
    for r in runs:
        pts = [(xm(k), ym(v)) for k, v in enumerate(r)]
        body += _polyline(pts, "#000", 1.8)
    if sandwich is not None:
        for arr, dash in ((sandwich.lower, "2,2"), (sandwich.upper, "6,2")):
            pts = [(xm(k), ym(v)) for k, v in enumerate(arr)]
            body += _polyline(pts, "#444", 1.0, dash=dash)
        body += _text(w - mr + 8, legend_y, "ideal sandwich", 10, "#444")
        legend_y += 14
    if marker is not None and runs:
        k, r = marker, runs[0]
        if k < len(r):
            x, y = xm(k), ym(r[k])
            body += _text(x, y + 4, "*", 22, "#d62728", anchor="middle")
    Path(path).write_text(_svg_document(w, h, body))


def svg_sets(path, eigenvalues=None, fov=None, contours=(), extra_loops=(),
             title=""):
    """Overlay plot: eigenvalue dots, FOV polygon, level-set contours."""
    w, h = 560, 520
    ml, mr, mt, mb = 55, 130, 30, 40
    xs, ys = [], []
    if eigenvalues is not None and len(eigenvalues):
        xs += list(np.real(eigenvalues))
        ys += list(np.imag(eigenvalues))
    if fov is not None and len(fov.vertices):
        xs += list(fov.vertices.real)
        ys += list(fov.vertices.imag)
    for c in contours:
        for lp in c.loops:
            xs += list(lp.real)
            ys += list(lp.imag)
    for lp in extra_loops:
        xs += list(np.real(lp))
        ys += list(np.imag(lp))
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    pad = 0.08 * max(x1 - x0, y1 - y0, 1e-8)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    scale = min((w - ml - mr) / (x1 - x0), (h - mt - mb) / (y1 - y0))

    def xm(x):
        return ml + (x - x0) * scale

    def ym(y):
        return h - mb - (y - y0) * scale

    body = _text(w / 2, 18, title, 13, anchor="middle")
    body += _polyline([(ml, mt), (ml, h - mb), (w - mr, h - mb)], "#000", 1.0)
    body += _text(xm(x0), h - 8, f"Re in [{x0:.3g}, {x1:.3g}]", 10)
    body += _text(12, mt + 4, f"Im in [{y0:.3g}, {y1:.3g}]", 10)
    legend_y = mt + 10
    if fov is not None and len(fov.vertices) >= 2:
        loop = np.append(fov.vertices, fov.vertices[0])
        body += _polyline([(xm(z.real), ym(z.imag)) for z in loop], "#555", 1.6)
        body += _text(w - mr + 8, legend_y, "W(A)", 10, "#555")
        legend_y += 14
    for i, c in enumerate(contours):
        color = _COLORS[i % len(_COLORS)]
        for lp in c.loops:
            body += _polyline([(xm(z.real), ym(z.imag)) for z in lp], color, 1.1)
        body += _text(w - mr + 8, legend_y, f"eps={c.epsilon:g}", 10, color)
        legend_y += 14
    for lp in extra_loops:
        body += _polyline([(xm(np.real(z)), ym(np.imag(z))) for z in lp],
                          "#111", 1.6, dash="5,3")
    if eigenvalues is not None:
        for z in eigenvalues:
            body += (f'<circle cx="{xm(z.real):.2f}" cy="{ym(z.imag):.2f}" '
                     f'r="2" fill="#000"/>\n')
    # origin cross
    if x0 < 0 < x1 and y0 < 0 < y1:
        body += _polyline([(xm(0) - 5, ym(0)), (xm(0) + 5, ym(0))], "#c00", 1.4)
        body += _polyline([(xm(0), ym(0) - 5), (xm(0), ym(0) + 5)], "#c00", 1.4)
    Path(path).write_text(_svg_document(w, h, body))


# ---------------------------------------------------------------------------
# shared argument handling


def _add_matrix_args(p):
    p.add_argument("--matrix", help="matrix file (.mtx Matrix Market or .json dense)")
    p.add_argument("--gallery", help="gallery entry name")
    p.add_argument("--param", action="append", default=[],
                   help="gallery parameter name=value (repeatable)")


def _parse_params(pairs):
    out = {}
    for item in pairs:
        if "=" not in item:
            raise SystemExit(EXIT_USAGE)
        key, val = item.split("=", 1)
        try:
            parsed = json.loads(val)
        except json.JSONDecodeError:
            parsed = val
        out[key.strip()] = parsed
    return out


def _get_matrix(args):
    if bool(args.matrix) == bool(args.gallery):
        sys.stderr.write("error: provide exactly one of --matrix or --gallery\n")
        raise SystemExit(EXIT_USAGE)
    if args.matrix:
        return Path(args.matrix).stem, matio.load_matrix(args.matrix)
    entry = gallery.build(args.gallery, **_parse_params(args.param))
    return entry.name, entry.matrix


def _parse_eps(text):
    eps = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok:
            v = float(tok)
            if v <= 0:
                raise SystemExit(EXIT_USAGE)
            eps.append(v)
    if not eps:
        raise SystemExit(EXIT_USAGE)
    return eps


def _parse_box(text):
    parts = [float(t) for t in text.split(",")]
    if len(parts) != 4 or not (parts[0] < parts[1] and parts[2] < parts[3]):
        raise SystemExit(EXIT_USAGE)
    return tuple(parts)


def _outdir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _validate_positive(args, names):
    for name in names:
        v = getattr(args, name, None)
        if v is not None and v <= 0:
            sys.stderr.write(f"error: --{name.replace('_', '-')} must be positive\n")
            raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# commands


def cmd_gallery(args):
    if args.action == "list":
        for name in gallery.gallery_names():
            defaults = gallery._REGISTRY.get(name, (None, {}))[1]
            pretty = ", ".join(f"{k}={v}" for k, v in defaults.items())
            print(f"{name:22s} {pretty}")
        return EXIT_OK
    entry = gallery.build(args.name, **_parse_params(args.param))
    out = _outdir(args)
    if args.format == "json":
        path = out / f"{entry.name}.json"
        matio.write_json_matrix(path, entry.matrix)
    else:
        path = out / f"{entry.name}.mtx"
        matio.write_matrix_market(path, entry.matrix,
                                  comment=f"kscope gallery {entry.name} {entry.params}")
    print(path)
    return EXIT_OK


def cmd_sets(args):
    _validate_positive(args, ["grid", "fov_angles", "kmax"])
    name, a = _get_matrix(args)
    out = _outdir(args)
    eps_list = _parse_eps(args.eps)
    box = _parse_box(args.box) if args.box else None

    spec = eigen_full(a)
    rows = ["re,im,kappa_lambda"]
    for lam, kap in zip(spec.eigenvalues, spec.kappa_lambda):
        rows.append(f"{lam.real!r},{lam.imag!r},{kap!r}")
    (out / f"{name}_eigenvalues.csv").write_text("\n".join(rows) + "\n")

    fov = sets.fov_boundary(a, m=args.fov_angles)
    rows = ["re,im"]
    for z in fov.vertices:
        rows.append(f"{z.real!r},{z.imag!r}")
    (out / f"{name}_fov.csv").write_text("\n".join(rows) + "\n")

    grid = sets.pseudospectrum_grid(a, box=box, nx=args.grid, ny=args.grid)
    (out / f"{name}_grid.csv").write_text(sets.grid_to_csv(grid))

    contours = []
    for eps in eps_list:
        if grid.values.min() < eps < grid.values.max():
            c = sets.extract_contour(grid, eps)
            contours.append(c)
            with open(out / f"{name}_contour_{eps:g}.json", "w") as fh:
                json.dump(sets.contour_to_json(c), fh)

    cg_loops = []
    try:
        cg = sets.cg_region(a, fov, resolution=args.grid)
        with open(out / f"{name}_cg.json", "w") as fh:
            json.dump(sets.contour_to_json(cg), fh)
        cg_loops = cg.loops
    except KscopeError:
        pass

    if args.svg:
        svg_sets(out / f"{name}_sets.svg", spec.eigenvalues, fov, contours,
                 extra_loops=cg_loops, title=f"{name}: spectrum, W(A), level sets")
    print(out)
    return EXIT_OK


def cmd_bounds(args):
    _validate_positive(args, ["kmax", "grid", "trials"])
    name, a = _get_matrix(args)
    out = _outdir(args)
    kmax = min(args.kmax, a.shape[0])
    eps_list = _parse_eps(args.eps)
    box = _parse_box(args.box) if args.box else None
    conj = args.conjecture_cfov2

    spec = eigen_full(a)
    fov = sets.fov_boundary(a)
    curves = [bounds.bound_ev(spec, kmax), bounds.bound_ev_prime(spec, kmax),
              bounds.bound_fov(fov, kmax, conjectured_constant=conj)]
    grid = sets.pseudospectrum_grid(a, box=box, nx=args.grid, ny=args.grid)
    family = bounds.bound_psa_family(grid, kmax, eps_list)
    curves.extend(family)
    try:
        cg = sets.cg_region(a, fov, resolution=args.grid)
        curves.append(bounds.bound_cg(cg, kmax))
    except KscopeError:
        pass
    part = projectors.auto_partition(spec, norm_a=two_norm(a))
    if 1 < len(part.groups) <= 8 and not spec.defective:
        try:
            pset = projectors.build_projectors(a, part, spec)
            curves.append(bounds.bound_fov_prime(pset, kmax, conjectured_constant=conj))
            curves.append(bounds.bound_psa_prime(pset, eps_list[len(eps_list) // 2], kmax))
        except KscopeError:
            pass
    if args.envelope:
        usable = [c for c in family if c.applicable]
        if usable:
            curves.append(bounds.psa_envelope(usable))

    (out / f"{name}_bounds.csv").write_text(bounds.curves_to_csv(curves))
    sw = krylov.ideal_gmres_sandwich(a, kmax, trials=args.trials, seed=args.seed)
    (out / f"{name}_sandwich.csv").write_text(bounds.sandwich_to_csv(sw))

    rng = np.random.default_rng(args.seed)
    runs = []
    for i in range(args.runs):
        r0 = rng.standard_normal(a.shape[0]) + 1j * rng.standard_normal(a.shape[0])
        hist = krylov.gmres(a, r0, maxit=kmax)
        runs.append(hist.relative_residuals)
        (out / f"{name}_gmres_{i}.csv").write_text(hist.to_csv())

    if args.svg:
        svg_convergence(out / f"{name}_bounds.svg", curves, runs, sandwich=sw,
                        title=f"{name}: convergence bounds")
    print(out)
    return EXIT_OK


def cmd_adaptive(args):
    _validate_positive(args, ["kmax", "grid"])
    name, a = _get_matrix(args)
    out = _outdir(args)
    snapshots = sorted({int(t) for t in args.k.split(",") if t.strip()})
    if not snapshots or snapshots[0] < 1:
        raise SystemExit(EXIT_USAGE)
    kmax = min(args.kmax, a.shape[0])
    eps_list = _parse_eps(args.eps)

    from .adaptive import estimate_from_iteration

    rng = np.random.default_rng(args.seed)
    n = a.shape[0]
    r0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    hist = krylov.gmres(a, r0, maxit=max(kmax, max(snapshots)))
    (out / f"{name}_gmres.csv").write_text(hist.to_csv())

    matrix_free = args.matrix_free
    for k in snapshots:
        if k > hist.decomposition.steps:
            continue
        est = estimate_from_iteration(
            hist.decomposition, k, eps_list, kmax,
            a=None if matrix_free else a, nx=args.grid, ny=args.grid)
        (out / f"{name}_adaptive_k{k}.csv").write_text(
            bounds.curves_to_csv(est.curves, include_estimate_column=True))
        rows = ["kind,value_re,value_im,smin,epsilon_bound,satisfied"]
        for c in est.ritz_certificates:
            rows.append(f"{c.kind},{c.value.real!r},{c.value.imag!r},"
                        f"{c.smin_at_value!r},{c.epsilon_bound!r},{c.satisfied}")
        (out / f"{name}_certificates_k{k}.csv").write_text("\n".join(rows) + "\n")
        if args.svg:
            svg_convergence(out / f"{name}_adaptive_k{k}.svg", est.curves,
                            [hist.relative_residuals], marker=k,
                            title=f"{name}: estimates from iteration {k}")
    print(out)
    return EXIT_OK


def cmd_verify(args):
    failures = acceptance.run_suite(args.suite, trials=args.trials, seed=args.seed)
    total = len(acceptance.SUITES[args.suite])
    print(f"{total - failures}/{total} checks passed")
    return EXIT_VERIFY if failures else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = _Parser(prog="kscope",
                description="spectral sets and GMRES convergence bounds")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gallery", help="list or build test matrices")
    gsub = g.add_subparsers(dest="action", required=True)
    gsub.add_parser("list", help="list gallery entries")
    gb = gsub.add_parser("build", help="build one entry and write it out")
    gb.add_argument("name")
    gb.add_argument("--param", action="append", default=[])
    gb.add_argument("--out", default="kscope-out")
    gb.add_argument("--format", choices=["mm", "json"], default="mm")

    s = sub.add_parser("sets", help="field of values, pseudospectra, CG region")
    _add_matrix_args(s)
    s.add_argument("--eps", default="1e-1,1e-2,1e-3,1e-4")
    s.add_argument("--grid", type=int, default=200)
    s.add_argument("--box", help="re_min,re_max,im_min,im_max")
    s.add_argument("--fov-angles", type=int, default=256)
    s.add_argument("--kmax", type=int, default=30)
    s.add_argument("--out", default="kscope-out")
    s.add_argument("--svg", action=argparse.BooleanOptionalAction, default=True)

    b = sub.add_parser("bounds", help="bound curves, sandwich, GMRES runs")
    _add_matrix_args(b)
    b.add_argument("--eps", default="1e-1,1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8,1e-9")
    b.add_argument("--kmax", type=int, default=30)
    b.add_argument("--grid", type=int, default=200)
    b.add_argument("--box")
    b.add_argument("--trials", type=int, default=8)
    b.add_argument("--runs", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--envelope", action="store_true")
    b.add_argument("--conjecture-cfov2", action="store_true",
                   help="use the conjectured field-of-values constant 2")
    b.add_argument("--out", default="kscope-out")
    b.add_argument("--svg", action=argparse.BooleanOptionalAction, default=True)

    ad = sub.add_parser("adaptive", help="mid-iteration convergence estimates")
    _add_matrix_args(ad)
    ad.add_argument("--k", required=True, help="snapshot iterations, comma list")
    ad.add_argument("--eps", default="1e-1,1e-2,1e-3,1e-4")
    ad.add_argument("--kmax", type=int, default=30)
    ad.add_argument("--grid", type=int, default=150)
    ad.add_argument("--seed", type=int, default=0)
    ad.add_argument("--matrix-free", action="store_true",
                    help="skip certificates against the full matrix")
    ad.add_argument("--out", default="kscope-out")
    ad.add_argument("--svg", action=argparse.BooleanOptionalAction, default=True)

    v = sub.add_parser("verify", help="run the acceptance suite")
    v.add_argument("--suite", choices=sorted(acceptance.SUITES), default="all")
    v.add_argument("--trials", type=int, default=None)
    v.add_argument("--seed", type=int, default=None)

    return p


_DISPATCH = {
    "gallery": cmd_gallery,
    "sets": cmd_sets,
    "bounds": cmd_bounds,
    "adaptive": cmd_adaptive,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except SystemExit:
        raise
    except (KscopeError, np.linalg.LinAlgError, ValueError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
