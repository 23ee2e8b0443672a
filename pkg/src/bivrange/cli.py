"""Command line entry point: ``bivrange {converge,grid,heatmap,verify}``."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench
from .interval import Box2
from .poly import CORPUS_DOMAINS, CORPUS_NAMES


def _pair(text: str):
    a, b = (float(v) for v in text.split(","))
    return a, b


def _domain(text: str) -> Box2:
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("domain needs x0,x1,y0,y1")
    return Box2.from_bounds(*vals)


def _radii(text: str):
    """``start,stop,count``: ``count`` log-spaced radii from ``start`` to ``stop``;
    a plain comma list with other lengths is taken literally."""
    vals = [float(v) for v in text.split(",")]
    if len(vals) == 3 and vals[2] == int(vals[2]) and vals[2] > 2 and vals[0] > 0 and vals[1] > 0:
        return list(np.logspace(np.log10(vals[0]), np.log10(vals[1]), int(vals[2])))
    return vals


def _forms(text: str):
    """``t2,t3,l3+shared`` style list; a trailing ``+shared`` item turns sharing on
    for every Lagrange and Hermite form."""
    items = [s.strip() for s in text.split(",") if s.strip()]
    share_all = "+shared" in items
    items = [s for s in items if s != "+shared"]
    if share_all:
        items = [s + "+shared" if s[0] in "lh" and "+shared" not in s else s for s in items]
    for s in items:
        bench.FormSpec.parse(s)
    return items


def _default_domain(args) -> Box2:
    if args.domain is not None:
        return args.domain
    if args.function in CORPUS_DOMAINS:
        return bench.corpus_domain(args.function)
    raise SystemExit("--domain is required for functions outside the corpus")


def cmd_converge(args) -> int:
    f = bench.resolve_function(args.function)
    rows = bench.converge(f, args.midpoint, args.radii, args.forms, args.resolution)
    if args.out:
        bench.write_convergence_csv(args.out, rows, args.forms)
    for row in rows:
        cells = "  ".join(f"{n}: q={row.q[n]:.3e}" for n in args.forms)
        print(f"r={row.radius:.6g}  exact=[{row.exact.lo:.10g}, {row.exact.hi:.10g}]  {cells}")
    fit = [row for row in rows if args.fit_min <= row.radius <= args.fit_max]
    if len(fit) >= 2:
        for name, s in bench.slopes(fit, args.forms).items():
            print(f"slope {name}: {s:.3f}")
    return 0


def cmd_grid(args) -> int:
    f = bench.resolve_function(args.function)
    reports = bench.grid_study(f, _default_domain(args), args.grid, args.forms, args.repeats,
                               memory=args.memory)
    if args.out:
        bench.write_grid_csv(args.out, args.function, reports)
    print(f"{'form':8} {'time (ms)':>10} {'speedup':>8} {'efficacy':>9} {'total width':>14}"
          + ("  peak alloc (MB)" if args.memory else ""))
    for rep in reports:
        line = (f"{rep.form.label:8} {rep.total_time_ms:10.2f} {rep.speedup:8.2f} "
                f"{rep.efficacy:9.4f} {rep.total_width:14.6g}")
        if args.memory:
            line += f"  {rep.peak_alloc_bytes / 2 ** 20:.2f}"
        print(line)
    return 0


def cmd_heatmap(args) -> int:
    f = bench.resolve_function(args.function)
    domain = _default_domain(args)
    a, b = args.forms[:2] if len(args.forms) >= 2 else (None, None)
    a = args.form_a or a
    b = args.form_b or b
    if a is None or b is None:
        raise SystemExit("heatmap needs two forms (--form-a/--form-b or --forms a,b)")
    hm = bench.heatmap(f, domain, args.grid, a, b)
    out = args.out or f"heatmap_{a}_vs_{b}"
    bench.write_heatmap_csv(out + ".csv", domain, hm)
    bench.write_ppm(out + ".ppm", hm.W, args.scale)
    W = hm.W[np.isfinite(hm.W)]
    print(f"{a} vs {b}: W<0 on {np.mean(W < 0):.1%} of cells, W>0 on {np.mean(W > 0):.1%}, "
          f"range [{W.min():.4f}, {W.max():.4f}]" if W.size else "no finite cells")
    if hm.invalid:
        print(f"{hm.invalid} cells with zero width drawn in the sentinel colour")
    return 0


def cmd_verify(args) -> int:
    checks = bench.verify(args.figure or bench.FIGURES, args.tolerance)
    report = bench.format_report(checks)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report)
    sys.stdout.write(report)
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bivrange", description="Range functions for bivariate polynomials.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, forms_default):
        sp.add_argument("--function", default="clover-4",
                        help=f"corpus name ({', '.join(CORPUS_NAMES)}) or polynomial file")
        sp.add_argument("--forms", type=_forms, default=list(forms_default))
        sp.add_argument("--out", default=None)

    c = sub.add_parser("converge", help="Hausdorff distances over shrinking squares")
    common(c, bench.FIVE_FORMS)
    c.add_argument("--midpoint", type=_pair, default=(0.1, 0.2))
    c.add_argument("--radii", type=_radii, default=[0.1, 0.01])
    c.add_argument("--resolution", type=float, default=1e-10)
    c.add_argument("--fit-min", type=float, default=10 ** -3.5)
    c.add_argument("--fit-max", type=float, default=10 ** -1.5)
    c.set_defaults(run=cmd_converge)

    g = sub.add_parser("grid", help="time and efficacy on an n x n subdivision")
    common(g, bench.TABLE_FORMS)
    g.add_argument("--domain", type=_domain, default=None)
    g.add_argument("--grid", type=int, default=32)
    g.add_argument("--repeats", type=int, default=1)
    g.add_argument("--memory", action="store_true", help="also trace peak allocations")
    g.set_defaults(run=cmd_grid)

    h = sub.add_parser("heatmap", help="pairwise efficacy W = log10(width_a / width_b)")
    common(h, ("t3", "t2"))
    h.add_argument("--domain", type=_domain, default=None)
    h.add_argument("--grid", type=int, default=32)
    h.add_argument("--form-a", default=None)
    h.add_argument("--form-b", default=None)
    h.add_argument("--scale", type=int, default=8, help="pixels per cell")
    h.set_defaults(run=cmd_heatmap)

    v = sub.add_parser("verify", help="check the golden values")
    v.add_argument("--figure", action="append", choices=bench.FIGURES)
    v.add_argument("--tolerance", type=float, default=1.0,
                   help="multiplier on the default slack (0 = exact after rounding)")
    v.add_argument("--out", default=None)
    v.set_defaults(run=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
