"""Experiment drivers: convergence tables, subdivision grids, heatmaps and the
golden-value check.

CSV files have a header row and a fixed column order; floats are written with
17 significant digits so that a file round-trips bit-exactly.
"""

from __future__ import annotations

import csv
import math
import time
import tracemalloc
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .forms import FormSpec, GridCache, evaluate, nodes_for
from .interval import Box2, Interval, hausdorff
from .oracle import oracle_range
from .poly import CORPUS_DOMAINS, Poly2, corpus

BASELINE = FormSpec("taylor", 2)
FIVE_FORMS = ("t2", "t3", "l3", "t4", "h4")
TABLE_FORMS = ("t2", "t3", "t4", "l3", "l3+shared", "h4", "h4+shared")


def fmt(x: float) -> str:
    return repr(float(x)) if math.isfinite(x) else str(x)


def fmt17(x: float) -> str:
    return f"{x:.17g}"


# ---------------------------------------------------------------------------
# golden values

@dataclass(frozen=True)
class GoldenCell:
    """One printed (range, q) cell; ``digits`` is the printed decimal count."""

    figure: str
    function: str
    midpoint: Tuple[float, float]
    radius: float
    form: str
    range: Tuple[float, float]
    q: float
    range_digits: int
    q_digits: int
    # the printed ranges of clover-4 are those of -f; q does not depend on the sign
    sign: float = 1.0


def _cells(figure, function, midpoint, radius, rows, rd, qd, sign=1.0):
    return [GoldenCell(figure, function, midpoint, radius, form, rng, q, rd, qd, sign)
            for form, rng, q in rows]


FIG5 = (
    _cells("fig5", "clover-4", (0.1, 0.2), 0.1, [
        ("t2", (-1.4303, -0.6978), 0.2667),
        ("t3", (-1.3976, -0.8436), 0.1209),
        ("l3", (-1.3688, -0.8688), 0.0958),
        ("t4", (-1.3630, -0.9397), 0.0249),
        ("h4", (-1.3621, -0.9508), 0.0138),
    ], 4, 4, sign=-1.0)
    + _cells("fig5", "clover-4", (0.1, 0.2), 0.01, [
        ("t2", (-1.07824745, -1.04988220), 0.00253750),
        ("t3", (-1.07792045, -1.05238265), 0.00003705),
        ("l3", (-1.07789250, -1.05241267), 0.00000703),
        ("t4", (-1.07788591, -1.05241719), 0.00000252),
        ("h4", (-1.07788571, -1.05241821), 0.00000149),
    ], 8, 8, sign=-1.0)
)

FIG6 = (
    _cells("fig6", "grass", (0.1, 0.1), 0.005, [
        ("t2", (-73.566, -46.367), 11.6914),
        ("t3", (-62.737, -46.391), 0.8625),
        ("l3", (-62.639, -45.980), 0.7648),
        ("t4", (-61.926, -46.404), 0.0516),
        ("h4", (-61.947, -46.360), 0.0728),
    ], 3, 4)
    + _cells("fig6", "grass", (0.1, 0.1), 0.0005, [
        ("t2", (-60.6614110, -59.2708307), 0.12624978),
        ("t3", (-60.5351831, -59.2710780), 0.00002195),
        ("l3", (-60.5355311, -59.2707216), 0.00036989),
        ("t4", (-60.5351702, -59.2710910), 0.00000904),
        ("h4", (-60.5351657, -59.2710865), 0.00000503),
    ], 7, 8)
)

# exact ranges printed next to the two convergence tables
EXACT_ROWS = {
    ("clover-4", 0.1): ((-1.3586, -0.9646), 4, -1.0),
    ("clover-4", 0.01): ((-1.07788547, -1.05241970), 8, -1.0),
    ("grass", 0.005): ((-61.874, -46.411), 3, 1.0),
    ("grass", 0.0005): ((-60.5351611, -59.2710915), 7, 1.0),
}

# efficacy per form in TABLE_FORMS order, then the printed times (ms) and
# memory (MB), which are machine specific and only reported
TABLE2 = {
    "clover-4": ((1, 1.1978, 1.1991, 1.1950, 1.1950, 1.1997, 1.1997),
                 (195.98, 197.92, 233.58, 368.19, 179.67, 546.54, 306.17),
                 (141.70, 140.89, 158.68, 251.10, 122.66, 748.78, 584.38)),
    "clover-5": ((1, 1.2223, 1.2229, 1.2195, 1.2195, 1.2240, 1.2240),
                 (333.99, 312.35, 320.70, 592.08, 288.54, 865.50, 457.68),
                 (217.26, 216.45, 235.58, 398.05, 193.40, 1039.23, 801.42)),
    "clover-8": ((1, 1.2986, 1.2990, 1.2941, 1.2941, 1.3014, 1.3014),
                 (846.72, 857.81, 848.14, 1514.08, 755.13, 1928.57, 988.37),
                 (560.39, 559.57, 584.61, 975.60, 466.93, 2222.16, 1625.63)),
    "grass": ((1, 1.1993, 1.2014, 1.1890, 1.1890, 1.2008, 1.2008),
              (838.99, 901.25, 804.90, 1385.02, 662.46, 1608.16, 669.50),
              (492.87, 492.06, 511.20, 807.83, 381.26, 1469.37, 916.84)),
}
TABLE5 = {
    "cardioid": ((1, 1.0710, 1.0712, 1.0703, 1.0703, 1.0713, 1.0713),
                 (68.58, 63.96, 83.85, 99.30, 35.61, 134.24, 55.50),
                 (26.67, 25.86, 40.89, 29.70, 9.73, 84.61, 53.09)),
    "lemniscate": ((1, 1.0671, 1.0676, 1.0669, 1.0669, 1.0676, 1.0676),
                   (72.83, 53.79, 75.38, 94.85, 35.93, 99.52, 56.72),
                   (27.14, 26.33, 41.36, 30.54, 10.12, 85.04, 53.20)),
    "octic-flower": ((1, 1.1581, 1.1604, 1.1562, 1.1562, 1.1606, 1.1606),
                     (277.22, 261.19, 321.33, 361.44, 140.09, 826.92, 511.36),
                     (101.49, 100.67, 117.35, 94.53, 37.61, 523.77, 410.90)),
}
EFFICACY_SLACK = 0.003
DIGIT_SLACK = 2

# minimum log-log slopes of q against r for the maximal forms
MIN_SLOPES = {"t2": 1.75, "t3": 2.75, "l3": 2.75, "t4": 3.75, "h4": 3.75}
SLOPE_RADII = tuple(10.0 ** e for e in np.linspace(-1.5, -3.5, 8))
SLOPE_SETUPS = (("clover-4", (0.1, 0.2)), ("grass", (0.1, 0.1)))


def resolve_function(source: str) -> Poly2:
    """A corpus name or a path to a polynomial file."""
    from .poly import load_poly

    return load_poly(source)


# ---------------------------------------------------------------------------
# convergence

@dataclass
class ConvergenceRow:
    radius: float
    exact: Interval
    resolution: float
    ranges: Dict[str, Interval] = field(default_factory=dict)
    q: Dict[str, float] = field(default_factory=dict)


def converge(f: Poly2, midpoint: Tuple[float, float], radii: Iterable[float],
             forms: Sequence[str] = FIVE_FORMS, resolution: float = 1e-10) -> List[ConvergenceRow]:
    specs = [FormSpec.parse(s) for s in forms]
    rows = []
    for r in radii:
        box = Box2.square(midpoint[0], midpoint[1], r)
        ref = oracle_range(f, box, resolution)
        row = ConvergenceRow(r, ref.range, ref.resolution)
        for name, spec in zip(forms, specs):
            rng = evaluate(spec, f, box)
            row.ranges[name] = rng
            row.q[name] = hausdorff(rng, ref.range)
        rows.append(row)
    return rows


def fit_slope(radii: Sequence[float], q: Sequence[float]) -> float:
    """Least-squares slope of ``log10 q`` against ``log10 r``."""
    x = np.log10(np.asarray(radii, dtype=float))
    y = np.log10(np.asarray(q, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def slopes(rows: Sequence[ConvergenceRow], forms: Sequence[str]) -> Dict[str, float]:
    out = {}
    for name in forms:
        qs = [row.q[name] for row in rows]
        if min(qs) <= 0:
            out[name] = math.nan
            continue
        out[name] = fit_slope([row.radius for row in rows], qs)
    return out


def write_convergence_csv(path, rows: Sequence[ConvergenceRow], forms: Sequence[str]):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        head = ["radius", "exact_lo", "exact_hi", "resolution"]
        for name in forms:
            head += [f"{name}_lo", f"{name}_hi", f"{name}_q"]
        w.writerow(head)
        for row in rows:
            line = [fmt17(row.radius), fmt17(row.exact.lo), fmt17(row.exact.hi),
                    fmt17(row.resolution)]
            for name in forms:
                rng = row.ranges[name]
                line += [fmt17(rng.lo), fmt17(rng.hi), fmt17(row.q[name])]
            w.writerow(line)


# ---------------------------------------------------------------------------
# subdivision grids

def grid_lines(lo: float, hi: float, n: int) -> List[float]:
    """Grid coordinates computed once, so neighbouring boxes share them bitwise."""
    if n < 1:
        raise ValueError("grid size must be positive")
    return [lo + (hi - lo) * k / n for k in range(n)] + [hi]


def grid_boxes(domain: Box2, n: int) -> List[Box2]:
    """Row-major (``y`` outer, ``x`` inner) list of the ``n x n`` sub-boxes."""
    xs = grid_lines(domain.x.lo, domain.x.hi, n)
    ys = grid_lines(domain.y.lo, domain.y.hi, n)
    return [Box2(Interval(xs[i], xs[i + 1]), Interval(ys[j], ys[j + 1]))
            for j in range(n) for i in range(n)]


def corpus_domain(name: str) -> Box2:
    lo, hi = CORPUS_DOMAINS[name]
    return Box2.from_bounds(lo, hi, lo, hi)


def evaluate_grid(f: Poly2, boxes: Sequence[Box2], spec: FormSpec) -> List[Interval]:
    """One pass over the grid; with sharing, the node cache is filled first."""
    cache = None
    if spec.sharing and spec.kind in ("lagrange", "hermite"):
        cache = GridCache(f)
        for box in boxes:
            cache.populate(nodes_for(spec, box))
        cache.freeze()
    return [evaluate(spec, f, box, cache) for box in boxes]


@dataclass
class GridReport:
    form: FormSpec
    total_time_ms: float
    total_width: float
    peak_alloc_bytes: int = 0
    speedup: float = 1.0
    efficacy: float = 1.0
    widths: List[float] = field(default_factory=list, repr=False)


def run_grid(f: Poly2, boxes: Sequence[Box2], spec: FormSpec, repeats: int = 1,
             memory: bool = False) -> GridReport:
    if repeats < 1:
        raise ValueError("repeats must be positive")
    total = 0.0
    ranges = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        ranges = evaluate_grid(f, boxes, spec)
        total += time.perf_counter() - t0
    widths = [rng.width for rng in ranges]
    width = 0.0
    for w in widths:
        width += w
    peak = 0
    if memory:
        # separate, untimed run: tracing slows allocation down
        tracemalloc.start()
        evaluate_grid(f, boxes, spec)
        peak = tracemalloc.get_traced_memory()[1]
        tracemalloc.stop()
    return GridReport(spec, 1000.0 * total / repeats, width, peak, widths=widths)


def grid_study(f: Poly2, domain: Box2, n: int, forms: Sequence[str], repeats: int = 1,
               memory: bool = False) -> List[GridReport]:
    """Reports for ``forms`` with speedup and efficacy against the T2 baseline."""
    boxes = grid_boxes(domain, n)
    specs = [FormSpec.parse(s) for s in forms]
    base = run_grid(f, boxes, BASELINE, repeats, memory)
    out = []
    for spec in specs:
        rep = base if spec == BASELINE else run_grid(f, boxes, spec, repeats, memory)
        rep = GridReport(spec, rep.total_time_ms, rep.total_width, rep.peak_alloc_bytes,
                         widths=rep.widths)
        rep.speedup = base.total_time_ms / rep.total_time_ms if rep.total_time_ms else math.inf
        rep.efficacy = base.total_width / rep.total_width if rep.total_width else math.inf
        out.append(rep)
    return out


def write_grid_csv(path, function: str, reports: Sequence[GridReport]):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["function", "form", "time_ms", "speedup", "efficacy", "total_width",
                    "peak_alloc_bytes"])
        for rep in reports:
            w.writerow([function, rep.form.label, fmt17(rep.total_time_ms), fmt17(rep.speedup),
                        fmt17(rep.efficacy), fmt17(rep.total_width), rep.peak_alloc_bytes])


# ---------------------------------------------------------------------------
# pairwise heatmaps

@dataclass
class Heatmap:
    n: int
    widths_a: np.ndarray
    widths_b: np.ndarray
    W: np.ndarray  # W[j, i] for row j (y) and column i (x); nan where undefined

    @property
    def invalid(self) -> int:
        return int(np.count_nonzero(~np.isfinite(self.W)))


def heatmap(f: Poly2, domain: Box2, n: int, form_a: str, form_b: str) -> Heatmap:
    boxes = grid_boxes(domain, n)
    wa = np.array([r.width for r in evaluate_grid(f, boxes, FormSpec.parse(form_a))])
    wb = np.array([r.width for r in evaluate_grid(f, boxes, FormSpec.parse(form_b))])
    with np.errstate(divide="ignore", invalid="ignore"):
        W = np.log10(wa / wb)
    W[(wa <= 0) | (wb <= 0)] = np.nan
    return Heatmap(n, wa.reshape(n, n), wb.reshape(n, n), W.reshape(n, n))


GREEN = np.array([0.0, 100.0, 0.0])
YELLOW = np.array([255.0, 255.0, 0.0])
RED = np.array([139.0, 0.0, 0.0])
SENTINEL = (128, 128, 128)


def colour(w: float, wmin: float, wmax: float) -> Tuple[int, int, int]:
    """Green for the smallest W, yellow at W = 0, dark red for the largest."""
    if not math.isfinite(w):
        return SENTINEL
    if w < 0 and wmin < 0:
        t = min(w / wmin, 1.0)
        c = YELLOW + t * (GREEN - YELLOW)
    elif w > 0 and wmax > 0:
        t = min(w / wmax, 1.0)
        c = YELLOW + t * (RED - YELLOW)
    else:
        c = YELLOW
    return tuple(int(round(v)) for v in c)


def write_ppm(path, W: np.ndarray, scale: int = 1):
    """Binary PPM, one ``scale x scale`` block per cell, largest ``y`` on top."""
    finite = W[np.isfinite(W)]
    wmin = float(finite.min()) if finite.size else 0.0
    wmax = float(finite.max()) if finite.size else 0.0
    n_rows, n_cols = W.shape
    img = np.zeros((n_rows * scale, n_cols * scale, 3), dtype=np.uint8)
    for j in range(n_rows):
        for i in range(n_cols):
            r0 = (n_rows - 1 - j) * scale
            img[r0:r0 + scale, i * scale:(i + 1) * scale] = colour(W[j, i], wmin, wmax)
    with open(path, "wb") as fh:
        fh.write(f"P6\n{n_cols * scale} {n_rows * scale}\n255\n".encode("ascii"))
        fh.write(img.tobytes())


def read_ppm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(maxsplit=4)
    if parts[0] != b"P6":
        raise ValueError("not a binary PPM")
    w, h = int(parts[1]), int(parts[2])
    return np.frombuffer(parts[4][: w * h * 3], dtype=np.uint8).reshape(h, w, 3)


def write_heatmap_csv(path, domain: Box2, hm: Heatmap):
    xs = grid_lines(domain.x.lo, domain.x.hi, hm.n)
    ys = grid_lines(domain.y.lo, domain.y.hi, hm.n)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["i", "j", "x_lo", "x_hi", "y_lo", "y_hi", "width_a", "width_b", "W"])
        for j in range(hm.n):
            for i in range(hm.n):
                w.writerow([i, j, fmt17(xs[i]), fmt17(xs[i + 1]), fmt17(ys[j]), fmt17(ys[j + 1]),
                            fmt17(hm.widths_a[j, i]), fmt17(hm.widths_b[j, i]),
                            fmt17(hm.W[j, i])])


# ---------------------------------------------------------------------------
# golden-value verification

@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def _close(value: float, printed: float, digits: int, mult: float) -> bool:
    unit = 10.0 ** -digits
    return abs(round(value, digits) - printed) <= DIGIT_SLACK * unit * mult + 1e-12 * unit


def check_figure(cells: Sequence[GoldenCell], tolerance: float = 1.0,
                 resolution: float = 1e-10) -> List[Check]:
    out = []
    setups = {}
    for c in cells:
        setups.setdefault((c.function, c.midpoint, c.radius), []).append(c)
    for (function, midpoint, radius), group in setups.items():
        f = corpus(function)
        row = converge(f, midpoint, [radius], [c.form for c in group], resolution)[0]
        for c in group:
            rng = row.ranges[c.form]
            lo, hi = (rng.lo, rng.hi) if c.sign > 0 else (-rng.hi, -rng.lo)
            ok = (_close(lo, c.range[0], c.range_digits, tolerance)
                  and _close(hi, c.range[1], c.range_digits, tolerance)
                  and _close(row.q[c.form], c.q, c.q_digits, tolerance))
            rd, qd = c.range_digits, c.q_digits
            detail = (f"range=[{lo:.{rd}f}, {hi:.{rd}f}] q={row.q[c.form]:.{qd}f} "
                      f"expected [{c.range[0]:.{rd}f}, {c.range[1]:.{rd}f}] q={c.q:.{qd}f}")
            out.append(Check(f"{c.figure} {function} r={radius:g} {c.form.upper()}", ok, detail))
    return out


def check_table(table: Dict[str, tuple], label: str, tolerance: float = 1.0,
                functions: Optional[Sequence[str]] = None) -> List[Check]:
    out = []
    for name, (eff, _, _) in table.items():
        if functions is not None and name not in functions:
            continue
        reports = grid_study(corpus(name), corpus_domain(name), 32, TABLE_FORMS)
        for rep, form, expected in zip(reports, TABLE_FORMS, eff):
            ok = abs(rep.efficacy - expected) <= EFFICACY_SLACK * tolerance + 1e-12
            out.append(Check(f"{label} {name} {rep.form.label}", ok,
                             f"efficacy={rep.efficacy:.4f} expected {expected:.4f}"))
    return out


FIGURES = ("fig5", "fig6", "table2", "table5")


def verify(figures: Sequence[str] = FIGURES, tolerance: float = 1.0) -> List[Check]:
    checks: List[Check] = []
    for fig in figures:
        if fig == "fig5":
            checks += check_figure(FIG5, tolerance)
        elif fig == "fig6":
            checks += check_figure(FIG6, tolerance)
        elif fig == "table2":
            checks += check_table(TABLE2, "table2", tolerance)
        elif fig == "table5":
            checks += check_table(TABLE5, "table5", tolerance)
        else:
            raise ValueError(f"unknown figure {fig!r}; choose from {', '.join(FIGURES)}")
    return checks


def format_report(checks: Sequence[Check]) -> str:
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}" for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} cells passed")
    return "\n".join(lines) + "\n"
