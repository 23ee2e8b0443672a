import csv
import math

import numpy as np
import pytest

from bivrange import bench
from bivrange.forms import FormSpec, evaluate
from bivrange.interval import Box2
from bivrange.poly import Poly2, corpus

SMALL = Box2.from_bounds(-1.2, 1.2, -1.2, 1.2)


def test_grid_lines_and_boxes():
    xs = bench.grid_lines(-1.2, 1.2, 32)
    assert len(xs) == 33 and xs[0] == -1.2 and xs[-1] == 1.2
    boxes = bench.grid_boxes(SMALL, 4)
    assert len(boxes) == 16
    # row-major with y outer: consecutive boxes share x edges bitwise
    assert boxes[0].x.hi == boxes[1].x.lo
    assert boxes[0].y == boxes[3].y and boxes[4].y.lo == boxes[0].y.hi
    for b in bench.grid_boxes(SMALL, 32):
        assert b.is_nearly_square()
    with pytest.raises(ValueError):
        bench.grid_lines(0, 1, 0)


def test_single_box_grid():
    f = corpus("cardioid")
    dom = Box2.square(0.3, -0.2, 0.4)
    reports = bench.grid_study(f, dom, 1, ["t2", "t3", "h4"])
    assert reports[0].efficacy == 1.0
    assert reports[1].total_width == evaluate(FormSpec.parse("t3"), f, dom).width
    for rep in reports:
        assert rep.speedup > 0


def test_total_width_matches_reevaluation():
    f = corpus("lemniscate")
    dom = bench.corpus_domain("lemniscate")
    boxes = bench.grid_boxes(dom, 8)
    for form in ("t4", "l3+shared", "h4"):
        spec = FormSpec.parse(form)
        rep = bench.run_grid(f, boxes, spec)
        ref = math.fsum(evaluate(spec, f, b).width for b in boxes)
        assert rep.total_width == pytest.approx(ref, rel=1e-12)


def test_sharing_invariance():
    f = corpus("clover-5")
    boxes = bench.grid_boxes(bench.corpus_domain("clover-5"), 8)
    for kind in ("l3", "h4"):
        plain = bench.evaluate_grid(f, boxes, FormSpec.parse(kind))
        shared = bench.evaluate_grid(f, boxes, FormSpec.parse(kind + "+shared"))
        assert plain == shared


def test_memory_tracking():
    f = corpus("cardioid")
    rep = bench.run_grid(f, bench.grid_boxes(bench.corpus_domain("cardioid"), 4),
                         FormSpec.parse("l3+shared"), memory=True)
    assert rep.peak_alloc_bytes > 0
    with pytest.raises(ValueError):
        bench.run_grid(f, [], FormSpec.parse("t2"), repeats=0)


def test_grid_csv_deterministic(tmp_path):
    f = corpus("octic-flower")
    dom = bench.corpus_domain("octic-flower")
    rows = []
    for k in range(2):
        path = tmp_path / f"g{k}.csv"
        bench.write_grid_csv(path, "octic-flower", bench.grid_study(f, dom, 6, ["t2", "t3", "l3"]))
        with open(path) as fh:
            rows.append(list(csv.DictReader(fh)))
    assert list(rows[0][0]) == ["function", "form", "time_ms", "speedup", "efficacy",
                                "total_width", "peak_alloc_bytes"]
    for a, b in zip(*rows):
        assert (a["form"], a["efficacy"], a["total_width"]) == (b["form"], b["efficacy"],
                                                                b["total_width"])
    # 17 significant digits round-trip exactly
    width = float(rows[0][1]["total_width"])
    assert bench.fmt17(width) == rows[0][1]["total_width"]


def test_convergence_rows_and_csv(tmp_path):
    f = Poly2.constant(2.5)
    rows = bench.converge(f, (0.1, 0.2), [0.1, 0.01])
    for row in rows:
        assert all(q == 0.0 for q in row.q.values())
    f = corpus("clover-4")
    rows = bench.converge(f, (0.1, 0.2), [0.1, 0.03], ["t2", "h4"], 1e-9)
    path = tmp_path / "c.csv"
    bench.write_convergence_csv(path, rows, ["t2", "h4"])
    with open(path) as fh:
        data = list(csv.reader(fh))
    assert data[0] == ["radius", "exact_lo", "exact_hi", "resolution",
                       "t2_lo", "t2_hi", "t2_q", "h4_lo", "h4_hi", "h4_q"]
    assert float(data[1][6]) == rows[0].q["t2"]
    for row in rows:
        # every form range contains the reference up to its resolution
        for rng in row.ranges.values():
            assert rng.lo <= row.exact.lo + row.resolution
            assert rng.hi >= row.exact.hi - row.resolution


def test_fit_slope():
    r = np.logspace(-3, -1, 6)
    assert bench.fit_slope(r, 3.0 * r ** 2.5) == pytest.approx(2.5)
    rows = [bench.ConvergenceRow(x, None, 0.0, q={"a": x ** 3, "b": 0.0}) for x in r]
    s = bench.slopes(rows, ["a", "b"])
    assert s["a"] == pytest.approx(3.0) and math.isnan(s["b"])


def test_heatmap_self_comparison(tmp_path):
    hm = bench.heatmap(corpus("cardioid"), bench.corpus_domain("cardioid"), 6, "t3", "t3")
    assert np.all(hm.W == 0.0)
    path = tmp_path / "self.ppm"
    bench.write_ppm(path, hm.W)
    img = bench.read_ppm(path)
    assert img.shape == (6, 6, 3)
    assert np.all(img == np.array([255, 255, 0], dtype=np.uint8))


def test_heatmap_sign_semantics():
    f = corpus("clover-4")
    dom = bench.corpus_domain("clover-4")
    n = 8
    hm = bench.heatmap(f, dom, n, "l3", "t3")
    boxes = bench.grid_boxes(dom, n)
    for k, box in enumerate(boxes):
        j, i = divmod(k, n)
        wa = evaluate(FormSpec.parse("l3"), f, box).width
        wb = evaluate(FormSpec.parse("t3"), f, box).width
        assert (hm.W[j, i] < 0) == (wa < wb)
        assert hm.W[j, i] == pytest.approx(math.log10(wa / wb))


def test_colour_map_and_orientation(tmp_path):
    assert bench.colour(-2.0, -2.0, 1.0) == (0, 100, 0)
    assert bench.colour(0.0, -2.0, 1.0) == (255, 255, 0)
    assert bench.colour(1.0, -2.0, 1.0) == (139, 0, 0)
    assert bench.colour(float("nan"), -1.0, 1.0) == bench.SENTINEL
    W = np.array([[-1.0, 0.0], [0.0, 1.0]])  # row 1 is the larger y
    path = tmp_path / "o.ppm"
    bench.write_ppm(path, W, scale=3)
    img = bench.read_ppm(path)
    assert img.shape == (6, 6, 3)
    assert tuple(img[0, 5]) == (139, 0, 0)  # top right: largest x and y
    assert tuple(img[5, 0]) == (0, 100, 0)  # bottom left


def test_heatmap_csv(tmp_path):
    dom = bench.corpus_domain("lemniscate")
    hm = bench.heatmap(corpus("lemniscate"), dom, 3, "t4", "t2")
    path = tmp_path / "h.csv"
    bench.write_heatmap_csv(path, dom, hm)
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 9
    assert float(rows[4]["W"]) == hm.W[1, 1]


def test_zero_width_cells_marked_invalid():
    hm = bench.heatmap(Poly2.constant(1.0), Box2.square(0, 0, 1), 2, "t3", "t2")
    assert hm.invalid == 4


def test_golden_tables_shape():
    assert len(bench.FIG5) == 10 and len(bench.FIG6) == 10
    assert sum(len(v[0]) for v in bench.TABLE2.values()) == 28
    assert sum(len(v[0]) for v in bench.TABLE5.values()) == 21


def test_verify_fig5_only():
    checks = bench.verify(["fig5"])
    assert len(checks) == 10 and all(c.passed for c in checks)
    strict = bench.verify(["fig5"], tolerance=0.0)
    assert sum(c.passed for c in strict) <= sum(c.passed for c in checks)
    report = bench.format_report(checks)
    assert report.count("PASS") == 10 and "10/10" in report
    with pytest.raises(ValueError):
        bench.verify(["fig9"])
