"""Shared helpers for the test suite."""

import numpy as np

from bivrange import Box2, Interval, Poly2
from bivrange.exact_range import CenteredPoly2


def centered_to_poly(p: CenteredPoly2) -> Poly2:
    """Expand a centred polynomial into the power basis."""
    mx, my = p.box.midpoint
    X = Poly2.x() - mx
    Y = Poly2.y() - my
    out = Poly2.zero()
    for (i, j), v in p.c.items():
        out = out + v * (X ** i) * (Y ** j)
    return out


def sample_box(f, box: Box2, n: int = 60):
    """Values of ``f`` on an ``n x n`` grid spanning the box, corners included."""
    xs = np.linspace(box.x.lo, box.x.hi, n)
    ys = np.linspace(box.y.lo, box.y.hi, n)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    return np.asarray(f(X, Y), dtype=float)


def sample_hull(f, box: Box2, n: int = 60) -> Interval:
    v = sample_box(f, box, n)
    return Interval(float(v.min()), float(v.max()))


def encloses(rng: Interval, values, rel: float = 1e-11) -> bool:
    """``values`` lie in ``rng`` up to double rounding of the endpoints."""
    values = np.asarray(values, dtype=float)
    slack = rel * (1.0 + float(np.abs(values).max()))
    return bool(values.min() >= rng.lo - slack and values.max() <= rng.hi + slack)


def term_scale(p: CenteredPoly2) -> float:
    rx, ry = p.box.radii
    return max([abs(v) * rx ** i * ry ** j for (i, j), v in p.c.items()] + [1.0])


def random_square(rng: np.random.Generator, lo: float, hi: float,
                  rmin: float = 1e-3) -> Box2:
    """Random square inside ``[lo, hi]^2`` with log-uniform radius."""
    rmax = 0.25 * (hi - lo)
    r = float(10 ** rng.uniform(np.log10(rmin), np.log10(rmax)))
    mx, my = rng.uniform(lo + r, hi - r, size=2)
    return Box2.square(float(mx), float(my), r)
